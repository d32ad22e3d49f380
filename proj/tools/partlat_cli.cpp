// Command-line front end.  One subcommand per library capability; files use
// the line-oriented formats from io.hpp; every report has a --json mirror.
// Exit codes: 0 success, 1 usage or domain error, 2 verification failure
// (NotGenerates, Unknown, failed script step, witness not found).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partlat/closure.hpp"
#include "partlat/graphviz.hpp"
#include "partlat/io.hpp"
#include "partlat/partition.hpp"
#include "partlat/quads.hpp"
#include "partlat/replay.hpp"
#include "partlat/term.hpp"

namespace {

using namespace partlat;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

std::string slurp(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

GeneratorQuad load_quad(const std::string& path) {
    std::istringstream s(slurp(path));
    return read_quad(s);
}

// Inputs carrying four generators plus provenance parse as quads; plain
// partition lists fall back to the set format.
struct AnyInput {
    std::optional<GeneratorQuad> quad;
    PrtFile set;
};

AnyInput load_any(const std::string& path) {
    std::string text = slurp(path);
    AnyInput in;
    try {
        std::istringstream s(text);
        GeneratorQuad q = read_quad(s);
        in.set.n = q.n;
        in.set.parts = q.member_list();
        in.quad = std::move(q);
    } catch (const std::exception&) {
        std::istringstream s(text);
        in.set = read_prt_file(s);
    }
    return in;
}

// "-o FILE" target, stdout when empty.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

Report quad_report(const GeneratorQuad& q) {
    Report rep;
    rep.set("n", q.n);
    rep.set("alpha", format_prt(q.alpha));
    rep.set("beta", format_prt(q.beta));
    rep.set("gamma", format_prt(q.gamma));
    rep.set("delta", format_prt(q.delta));
    rep.set("provenance", q.provenance);
    rep.set("target_index", q.target_index);
    rep.set("target", format_prt(q.target()));
    return rep;
}

int require_k(int k, const std::string& id) {
    if (k <= 0) throw std::invalid_argument("--k is required for \"" + id + "\"");
    return k;
}

// Shared by `script dump` and `script run`: an id from the family table
// (oddat, evenat, evenhtwo, oddhtwo with --k), "window" (with --k), a
// sporadic id (n4, n5, n6, n7), or a quad file whose provenance names a
// script.
ProofScript select_script(const std::string& id, int k, const std::string& file) {
    if (!id.empty() && !file.empty())
        throw std::invalid_argument("give either --id or a quad file, not both");
    if (!id.empty()) {
        if (id == "window") return window_script(require_k(k, id));
        if (auto sp = sporadic_from_string(id)) return script_sporadic(*sp);
        if (auto f = family_from_id(id)) return script_family(*f, require_k(k, id));
        throw std::invalid_argument("unknown script id \"" + id + "\"");
    }
    if (!file.empty()) return script_for_quad(load_quad(file));
    throw std::invalid_argument("a script selector is required: --id or a quad file");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"four-element generating sets of finite partition lattices"};
    app.require_subcommand(1);
    int rc = kExitOk;

    // ---- construct ------------------------------------------------------
    auto* construct =
        app.add_subcommand("construct", "build a generating quad around a target partition");
    struct {
        int n = 0;
        std::string shape, target, out;
        bool json = false;
    } c_opt;
    construct->add_option("--n", c_opt.n, "ground set size (>= 4)")->required();
    construct->add_option("--shape", c_opt.shape, "canonical target: atom, two2, or three");
    construct->add_option("--target", c_opt.target, "explicit target in prt form (height 1 or 2)");
    construct->add_option("-o,--output", c_opt.out, "write the quad here instead of stdout");
    construct->add_flag("--json", c_opt.json, "JSON quad instead of the key-value file form");
    construct->callback([&] {
        if (c_opt.shape.empty() == c_opt.target.empty())
            throw std::invalid_argument("construct needs exactly one of --shape / --target");
        Partition target;
        if (c_opt.shape == "atom") target = parse_prt("prt({1,2})", c_opt.n);
        else if (c_opt.shape == "two2") target = parse_prt("prt({1,2};{3,4})", c_opt.n);
        else if (c_opt.shape == "three") target = parse_prt("prt({1,2,3})", c_opt.n);
        else if (!c_opt.shape.empty())
            throw std::invalid_argument("unknown shape \"" + c_opt.shape + "\"");
        else target = parse_prt(c_opt.target, c_opt.n);
        GeneratorQuad q = build_for(target);
        Output out(c_opt.out);
        if (c_opt.json) out.stream() << quad_report(q).json_text() << "\n";
        else write_quad(out.stream(), q);
    });

    // ---- verify ---------------------------------------------------------
    auto* verify =
        app.add_subcommand("verify", "check that a quad (or set) generates its whole lattice");
    struct {
        std::string file = "-", mode = "closure";
        int jobs = 1;
        std::uint64_t budget = kDefaultPairBudget;
        bool witnesses = false, json = false;
    } v_opt;
    verify->add_option("file", v_opt.file, "quad or set file; - reads stdin");
    verify->add_option("--mode", v_opt.mode, "closure (default) or script")
        ->check(CLI::IsMember({"closure", "script"}));
    verify->add_option("--jobs", v_opt.jobs, "closure worker threads");
    verify->add_option("--budget", v_opt.budget, "pair-operation budget for closure mode");
    verify->add_flag("--witnesses", v_opt.witnesses,
                     "script mode: evaluate every pairwise circle witness too");
    verify->add_flag("--json", v_opt.json, "full report as JSON");
    verify->callback([&] {
        if (v_opt.mode == "closure") {
            AnyInput in = load_any(v_opt.file);
            ClosureReport r = generates(in.set.parts, in.set.n, v_opt.budget, v_opt.jobs);
            if (v_opt.json) std::cout << closure_report(r).json_text() << "\n";
            else std::cout << verdict_name(r.verdict) << "\n";
            if (r.verdict != Verdict::Generates) rc = kExitVerify;
        } else {
            GeneratorQuad q = load_quad(v_opt.file);
            ProofScript s = script_for_quad(q);
            ReplayReport r = run_script(s, v_opt.witnesses);
            if (v_opt.json) std::cout << replay_report(r, s.id).json_text() << "\n";
            else if (r.pass) std::cout << "PASS\n";
            else std::cout << "FAIL: " << (r.failure.empty() ? "goal check failed" : r.failure)
                           << "\n";
            if (!r.pass) rc = kExitVerify;
        }
    });

    // ---- closure --------------------------------------------------------
    auto* clos = app.add_subcommand("closure", "full sublattice closure of a set");
    struct {
        std::string file = "-", out;
        int jobs = 1;
        std::uint64_t budget = kDefaultPairBudget;
        bool json = false;
    } l_opt;
    clos->add_option("file", l_opt.file, "quad or set file; - reads stdin");
    clos->add_option("--jobs", l_opt.jobs, "closure worker threads");
    clos->add_option("--budget", l_opt.budget, "pair-operation budget");
    clos->add_option("-o,--output", l_opt.out, "write the closed set here");
    clos->add_flag("--json", l_opt.json, "report as JSON");
    clos->callback([&] {
        AnyInput in = load_any(l_opt.file);
        ClosureResult res = closure(in.set.parts, l_opt.budget, l_opt.jobs);
        Report rep = closure_report(res.report);
        std::cout << (l_opt.json ? rep.json_text() + "\n" : rep.text());
        if (!l_opt.out.empty()) {
            Output out(l_opt.out);
            write_prt_file(out.stream(), PrtFile{in.set.n, res.set});
        }
        if (res.report.budget_hit) rc = kExitVerify;
    });

    // ---- member ---------------------------------------------------------
    auto* mem = app.add_subcommand("member", "membership of a partition in the closure of a set");
    struct {
        std::string file = "-", target;
        std::uint64_t budget = kDefaultPairBudget;
        bool json = false;
    } m_opt;
    mem->add_option("file", m_opt.file, "quad or set file; - reads stdin");
    mem->add_option("--target", m_opt.target, "partition in prt form")->required();
    mem->add_option("--budget", m_opt.budget, "pair-operation budget");
    mem->add_flag("--json", m_opt.json, "report as JSON");
    mem->callback([&] {
        AnyInput in = load_any(m_opt.file);
        Partition p = parse_prt(m_opt.target, in.set.n);
        Ternary t = member_of_closure(p, in.set.parts, m_opt.budget);
        const char* word = t == Ternary::True ? "true" : t == Ternary::False ? "false" : "unknown";
        if (m_opt.json) {
            Report rep;
            rep.set("target", format_prt(p));
            rep.set("member", word);
            std::cout << rep.json_text() << "\n";
        } else {
            std::cout << word << "\n";
        }
        if (t != Ternary::True) rc = kExitVerify;
    });

    // ---- extensions -----------------------------------------------------
    auto* ext =
        app.add_subcommand("extensions", "generating extensions of a quad to a larger ground set");
    struct {
        std::string file = "-", mode = "find", out;
        int m = 0;
        std::uint64_t budget = kDefaultPairBudget;
        bool json = false;
    } e_opt;
    ext->add_option("file", e_opt.file, "quad file; - reads stdin");
    ext->add_option("--m", e_opt.m, "number of new ground elements")->required();
    ext->add_option("--mode", e_opt.mode, "find (first witness) or count (all candidates)")
        ->check(CLI::IsMember({"find", "count"}));
    ext->add_option("--budget", e_opt.budget, "total pair-operation budget");
    ext->add_option("-o,--output", e_opt.out, "write the witness quad here");
    ext->add_flag("--json", e_opt.json, "report as JSON");
    ext->callback([&] {
        GeneratorQuad q = load_quad(e_opt.file);
        ExtensionMode mode =
            e_opt.mode == "find" ? ExtensionMode::FindOne : ExtensionMode::CountAll;
        ExtensionReport r = extension_search(q, e_opt.m, mode, e_opt.budget);
        Report rep = extension_report(r);
        std::cout << (e_opt.json ? rep.json_text() + "\n" : rep.text());
        if (!e_opt.out.empty() && r.witness) {
            Output out(e_opt.out);
            write_quad(out.stream(), *r.witness);
        }
        bool ok = mode == ExtensionMode::FindOne ? r.witness.has_value() : r.complete;
        if (!ok) rc = kExitVerify;
    });

    // ---- eligible -------------------------------------------------------
    auto* eli = app.add_subcommand(
        "eligible", "five-equation eligibility of (beta, gamma, alpha, delta; u, v)");
    struct {
        std::string file = "-";
        int u = 0, v = 0;
        bool json = false;
    } g_opt;
    eli->add_option("file", g_opt.file, "quad file; - reads stdin");
    eli->add_option("--u", g_opt.u, "first ground element")->required();
    eli->add_option("--v", g_opt.v, "second ground element")->required();
    eli->add_flag("--json", g_opt.json, "report as JSON");
    eli->callback([&] {
        GeneratorQuad q = load_quad(g_opt.file);
        if (g_opt.u < 1 || g_opt.u > q.n || g_opt.v < 1 || g_opt.v > q.n || g_opt.u == g_opt.v)
            throw std::invalid_argument("u and v must be distinct elements of the ground set");
        EligibilityReport r = eligible_system(q, g_opt.u, g_opt.v);
        Report rep = eligibility_report(r);
        std::cout << (g_opt.json ? rep.json_text() + "\n" : rep.text());
        if (!r.eligible()) rc = kExitVerify;
    });

    // ---- term -----------------------------------------------------------
    auto* term = app.add_subcommand("term", "lattice-term utilities");
    term->require_subcommand(1);

    auto* teval = term->add_subcommand(
        "eval", "evaluate a term file at a tuple; the value lines are the session key");
    struct {
        std::string terms, tuple, out;
        bool key = false, json = false;
    } t_opt;
    teval->add_option("--terms", t_opt.terms, "term file (header k)")->required();
    teval->add_option("--tuple", t_opt.tuple, "tuple file (header n, k partitions)")->required();
    teval->add_option("-o,--output", t_opt.out, "write the values here instead of stdout");
    teval->add_flag("--key", t_opt.key, "emit the raw session-key bytes (no n header)");
    teval->add_flag("--json", t_opt.json, "values as JSON");
    teval->callback([&] {
        std::istringstream ts(slurp(t_opt.terms));
        TermVector tv = read_terms(ts);
        std::istringstream ps(slurp(t_opt.tuple));
        PrtFile tup = read_prt_file(ps);
        if (static_cast<int>(tup.parts.size()) != tv.k)
            throw std::invalid_argument("tuple holds " + std::to_string(tup.parts.size()) +
                                        " partitions but the terms expect " +
                                        std::to_string(tv.k));
        Output out(t_opt.out);
        if (t_opt.key) {
            out.stream() << derive_session_key(tv, tup.parts);
            return;
        }
        PrtFile vals{tup.n, {}};
        for (const LatticeTerm& t : tv.terms) vals.parts.push_back(eval(t, tup.parts));
        if (t_opt.json) {
            Report rep;
            rep.set("n", vals.n);
            std::vector<std::string> lines;
            for (const Partition& p : vals.parts) lines.push_back(format_prt(p));
            rep.set("values", lines);
            out.stream() << rep.json_text() << "\n";
        } else {
            write_prt_file(out.stream(), vals);
        }
    });

    auto* trand = term->add_subcommand("random", "deterministic random terms from a seed");
    struct {
        int k = 0, count = 4, depth = 6;
        std::uint64_t seed = 0;
        bool seeded = false, json = false;
        std::string out;
    } r_opt;
    trand->add_option("--k", r_opt.k, "number of variables")->required();
    trand->add_option("--count", r_opt.count, "how many terms (default 4)");
    trand->add_option("--depth", r_opt.depth, "maximum term depth (default 6)");
    trand->add_option("--seed", r_opt.seed, "stream seed (required; no ambient randomness)")
        ->required();
    trand->add_option("-o,--output", r_opt.out, "write the term file here");
    trand->add_flag("--json", r_opt.json, "terms as JSON");
    trand->callback([&] {
        TermVector tv = random_terms(r_opt.k, r_opt.count, r_opt.depth, r_opt.seed);
        Output out(r_opt.out);
        if (r_opt.json) {
            Report rep;
            rep.set("k", tv.k);
            std::vector<std::string> lines;
            for (const LatticeTerm& t : tv.terms) lines.push_back(format_term(t));
            rep.set("terms", lines);
            out.stream() << rep.json_text() << "\n";
        } else {
            write_terms(out.stream(), tv);
        }
    });

    // ---- graph ----------------------------------------------------------
    auto* gr = app.add_subcommand("graph", "DOT drawing of a parameterized family quad");
    struct {
        std::string family, out;
        int k = 0;
    } d_opt;
    gr->add_option("--family", d_opt.family, "oddat, evenat, evenhtwo, or oddhtwo")->required();
    gr->add_option("--k", d_opt.k, "family parameter")->required();
    gr->add_option("-o,--output", d_opt.out, "write the DOT text here");
    gr->callback([&] {
        Output out(d_opt.out);
        out.stream() << emit_graph(d_opt.family, d_opt.k);
    });

    // ---- script ---------------------------------------------------------
    auto* scr = app.add_subcommand("script", "derivation scripts: textual dump and replay");
    scr->require_subcommand(1);
    struct {
        std::string id, file, out;
        int k = 0;
        bool witnesses = false, json = false;
    } s_opt;

    auto add_selector = [&](CLI::App* cmd) {
        cmd->add_option("file", s_opt.file, "quad file whose provenance names a script");
        cmd->add_option("--id", s_opt.id,
                        "script id: oddat, evenat, evenhtwo, oddhtwo, window (with --k) "
                        "or n4, n5, n6, n7");
        cmd->add_option("--k", s_opt.k, "family parameter");
    };

    auto* sdump = scr->add_subcommand("dump", "print a script as name := recipe lines");
    add_selector(sdump);
    sdump->add_option("-o,--output", s_opt.out, "write the dump here");
    sdump->callback([&] {
        Output out(s_opt.out);
        out.stream() << dump_script(select_script(s_opt.id, s_opt.k, s_opt.file));
    });

    auto* srun = scr->add_subcommand("run", "replay a script and check its goal");
    add_selector(srun);
    srun->add_flag("--witnesses", s_opt.witnesses, "evaluate every pairwise circle witness too");
    srun->add_flag("--json", s_opt.json, "report as JSON");
    srun->callback([&] {
        ProofScript s = select_script(s_opt.id, s_opt.k, s_opt.file);
        ReplayReport r = run_script(s, s_opt.witnesses);
        Report rep = replay_report(r, s.id);
        std::cout << (s_opt.json ? rep.json_text() + "\n" : rep.text());
        if (!r.pass) rc = kExitVerify;
    });

    // ---- bell -----------------------------------------------------------
    auto* bell = app.add_subcommand("bell", "Bell number |Part(n)|");
    struct {
        int n = -1;
    } b_opt;
    bell->add_option("--n", b_opt.n, "ground set size (0..25)")->required();
    bell->callback([&] { std::cout << bell_number(b_opt.n) << "\n"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
