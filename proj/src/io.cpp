#include "partlat/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace partlat {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Next non-blank line, stripped; false at end of stream.
bool next_line(std::istream& in, std::string& out) {
    std::string line;
    while (std::getline(in, line)) {
        out = strip(line);
        if (!out.empty()) return true;
    }
    return false;
}

int parse_header(const std::string& line, const std::string& key) {
    std::istringstream ss(line);
    std::string word;
    int value = 0;
    if (!(ss >> word) || word != key || !(ss >> value))
        throw std::invalid_argument("expected header '" + key + " <int>', got '" + line + "'");
    std::string rest;
    if (ss >> rest) throw std::invalid_argument("trailing content after header: '" + line + "'");
    return value;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

}  // namespace

PrtFile read_prt_file(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw std::invalid_argument("empty partition file");
    PrtFile f;
    f.n = parse_header(line, "n");
    while (next_line(in, line)) f.parts.push_back(parse_prt(line, f.n));
    return f;
}

PrtFile read_prt_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_prt_file(in);
}

void write_prt_file(std::ostream& out, const PrtFile& f) {
    out << "n " << f.n << "\n";
    for (const auto& p : f.parts) out << format_prt(p) << "\n";
}

GeneratorQuad read_quad(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw std::invalid_argument("empty quad file");
    GeneratorQuad q;
    q.n = parse_header(line, "n");
    bool have[4] = {false, false, false, false};
    bool have_prov = false;
    while (next_line(in, line)) {
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        std::string rest = strip(line.substr(key.size()));
        if (key == "alpha" || key == "beta" || key == "gamma" || key == "delta") {
            const int idx = key == "alpha" ? 0 : key == "beta" ? 1 : key == "gamma" ? 2 : 3;
            Partition p = parse_prt(rest, q.n);
            switch (idx) {
                case 0: q.alpha = std::move(p); break;
                case 1: q.beta = std::move(p); break;
                case 2: q.gamma = std::move(p); break;
                case 3: q.delta = std::move(p); break;
            }
            have[idx] = true;
        } else if (key == "provenance") {
            if (rest.empty()) throw std::invalid_argument("empty provenance in quad file");
            q.provenance = rest;
            have_prov = true;
        } else if (key == "target") {
            int t = 0;
            std::istringstream ts(rest);
            if (!(ts >> t) || t < 0 || t > 3)
                throw std::invalid_argument("quad target must be 0..3, got '" + rest + "'");
            q.target_index = t;
        } else {
            throw std::invalid_argument("unknown quad file key '" + key + "'");
        }
    }
    for (int i = 0; i < 4; ++i)
        if (!have[i]) throw std::invalid_argument("quad file is missing a generator line");
    if (!have_prov) throw std::invalid_argument("quad file is missing the provenance line");
    return q;
}

GeneratorQuad read_quad_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_quad(in);
}

void write_quad(std::ostream& out, const GeneratorQuad& q) {
    out << "n " << q.n << "\n";
    out << "alpha " << format_prt(q.alpha) << "\n";
    out << "beta " << format_prt(q.beta) << "\n";
    out << "gamma " << format_prt(q.gamma) << "\n";
    out << "delta " << format_prt(q.delta) << "\n";
    out << "provenance " << q.provenance << "\n";
    out << "target " << q.target_index << "\n";
}

TermVector read_terms(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw std::invalid_argument("empty term file");
    TermVector tv;
    tv.k = parse_header(line, "k");
    while (next_line(in, line)) tv.terms.push_back(parse_term(line, tv.k));
    return tv;
}

TermVector read_terms_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_terms(in);
}

void write_terms(std::ostream& out, const TermVector& tv) {
    out << "k " << tv.k << "\n";
    for (const auto& t : tv.terms) out << format_term(t) << "\n";
}

std::string Report::text() const {
    std::string out;
    for (const auto& [key, value] : data_.items()) {
        out += key;
        out += ": ";
        if (value.is_string())
            out += value.get<std::string>();
        else
            out += value.dump();
        out += "\n";
    }
    return out;
}

std::string Report::json_text(int indent) const { return data_.dump(indent); }

Report closure_report(const ClosureReport& r) {
    Report rep;
    rep.set("verdict", verdict_name(r.verdict));
    rep.set("closure_size", r.closure_size);
    rep.set("atoms_found", r.atoms_found);
    rep.set("pair_ops", r.pair_ops);
    rep.set("pair_ops_exact", r.pair_ops_exact);
    rep.set("budget_hit", r.budget_hit);
    return rep;
}

Report replay_report(const ReplayReport& r, const std::string& script_id) {
    Report rep;
    rep.set("script", script_id);
    rep.set("pass", r.pass);
    rep.set("steps_total", r.steps_total);
    rep.set("steps_passed", r.steps_passed);
    if (r.failed_step) rep.set("failed_step", *r.failed_step);
    if (!r.failure.empty()) rep.set("failure", r.failure);
    rep.set("goal_perimeter_ok", r.goal_perimeter_ok);
    rep.set("goal_edges_ok", r.goal_edges_ok);
    rep.set("established_atoms", r.established_atoms);
    rep.set("witnesses_checked", r.witnesses_checked);
    if (r.witnesses_checked) rep.set("witness_evals", r.witness_evals);
    return rep;
}

Report eligibility_report(const EligibilityReport& r) {
    Report rep;
    rep.set("u", r.u);
    rep.set("v", r.v);
    rep.set("beta_join_gamma_is_top", r.beta_join_gamma_is_top);
    rep.set("beta_meet_gamma_is_bottom", r.beta_meet_gamma_is_bottom);
    rep.set("alpha_delta_uv_is_top", r.alpha_delta_uv_is_top);
    rep.set("alpha_split_is_bottom", r.alpha_split_is_bottom);
    rep.set("delta_split_is_bottom", r.delta_split_is_bottom);
    rep.set("eligible", r.eligible());
    return rep;
}

Report extension_report(const ExtensionReport& r) {
    Report rep;
    rep.set("base_n", r.base_n);
    rep.set("m", r.m);
    rep.set("mode", r.mode == ExtensionMode::FindOne ? "find-one" : "count-all");
    rep.set("candidates_total", r.candidates_total);
    rep.set("candidates_checked", r.candidates_checked);
    rep.set("pruned", r.pruned);
    rep.set("generating_count", r.generating_count);
    rep.set("formula_value", r.formula_value);
    rep.set("formula_even_m", r.formula_even_m);
    rep.set("complete", r.complete);
    rep.set("pair_ops_spent", r.pair_ops_spent);
    rep.set("witness_found", r.witness.has_value());
    if (r.witness) {
        rep.set("witness_alpha", format_prt(r.witness->alpha));
        rep.set("witness_beta", format_prt(r.witness->beta));
        rep.set("witness_gamma", format_prt(r.witness->gamma));
        rep.set("witness_delta", format_prt(r.witness->delta));
        rep.set("witness_provenance", r.witness->provenance);
    }
    return rep;
}

std::string render_recipe(const LatticeTerm& t, const std::vector<std::string>& names) {
    using Kind = LatticeTerm::Kind;
    std::string out;
    struct Rec {
        std::string& out;
        const std::vector<std::string>& names;
        void go(const LatticeTerm& nd, Kind parent, bool right_child) {
            if (nd.kind() == Kind::Variable) {
                out += names.at(nd.var_index() - 1);
                return;
            }
            const bool parens = (parent == Kind::Meet && nd.kind() == Kind::Join) ||
                                (right_child && parent == nd.kind());
            if (parens) out += '(';
            go(nd.left(), nd.kind(), false);
            out += nd.kind() == Kind::Meet ? " & " : " | ";
            go(nd.right(), nd.kind(), true);
            if (parens) out += ')';
        }
    };
    Rec{out, names}.go(t, Kind::Variable, false);
    return out;
}

std::string dump_script(const ProofScript& s) {
    std::ostringstream out;
    out << "# " << s.id << " on n=" << s.generators.n << "\n";
    for (int i = 0; i < 4; ++i)
        out << "# " << s.generator_names[i] << " = " << format_prt(s.generators.member(i))
            << "\n";
    for (const auto& st : s.steps)
        out << st.name << " := " << render_recipe(st.recipe, st.refs) << "  # expected "
            << format_prt(st.expected) << "\n";
    out << "# goal:";
    for (int v : s.goal.perimeter) out << ' ' << v;
    out << "\n";
    return out.str();
}

}  // namespace partlat
