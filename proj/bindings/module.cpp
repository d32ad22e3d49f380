// Python face of the library: partitions, closure, quads, scripts, terms.
// Reports cross the boundary as plain dicts with the same keys the CLI's
// JSON output uses.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "partlat/closure.hpp"
#include "partlat/graphviz.hpp"
#include "partlat/io.hpp"
#include "partlat/partition.hpp"
#include "partlat/quads.hpp"
#include "partlat/replay.hpp"
#include "partlat/term.hpp"

namespace py = pybind11;
using namespace partlat;

namespace {

py::dict dict_of(const ClosureReport& r) {
    py::dict d;
    d["verdict"] = verdict_name(r.verdict);
    d["closure_size"] = r.closure_size;
    d["atoms_found"] = r.atoms_found;
    d["pair_ops"] = r.pair_ops;
    d["pair_ops_exact"] = r.pair_ops_exact;
    d["budget_hit"] = r.budget_hit;
    return d;
}

py::dict dict_of(const ReplayReport& r, const std::string& id) {
    py::dict d;
    d["script"] = id;
    d["pass"] = r.pass;
    d["steps_total"] = r.steps_total;
    d["steps_passed"] = r.steps_passed;
    if (r.failed_step) d["failed_step"] = *r.failed_step;
    if (!r.failure.empty()) d["failure"] = r.failure;
    d["goal_perimeter_ok"] = r.goal_perimeter_ok;
    d["goal_edges_ok"] = r.goal_edges_ok;
    d["established_atoms"] = r.established_atoms;
    d["witnesses_checked"] = r.witnesses_checked;
    if (r.witnesses_checked) d["witness_evals"] = r.witness_evals;
    return d;
}

py::dict dict_of(const EligibilityReport& r) {
    py::dict d;
    d["u"] = r.u;
    d["v"] = r.v;
    d["beta_join_gamma_is_top"] = r.beta_join_gamma_is_top;
    d["beta_meet_gamma_is_bottom"] = r.beta_meet_gamma_is_bottom;
    d["alpha_delta_uv_is_top"] = r.alpha_delta_uv_is_top;
    d["alpha_split_is_bottom"] = r.alpha_split_is_bottom;
    d["delta_split_is_bottom"] = r.delta_split_is_bottom;
    d["eligible"] = r.eligible();
    return d;
}

py::dict dict_of(const ExtensionReport& r) {
    py::dict d;
    d["base_n"] = r.base_n;
    d["m"] = r.m;
    d["mode"] = r.mode == ExtensionMode::FindOne ? "find-one" : "count-all";
    d["candidates_total"] = r.candidates_total;
    d["candidates_checked"] = r.candidates_checked;
    d["pruned"] = r.pruned;
    d["generating_count"] = r.generating_count;
    d["formula_value"] = r.formula_value;
    d["formula_even_m"] = r.formula_even_m;
    d["complete"] = r.complete;
    d["pair_ops_spent"] = r.pair_ops_spent;
    if (r.witness) d["witness"] = *r.witness;
    return d;
}

Family family_or_throw(const std::string& id) {
    auto f = family_from_id(id);
    if (!f) throw std::invalid_argument("unknown construction id '" + id + "'");
    return *f;
}

ProofScript named_script(const std::string& id, std::optional<int> k) {
    if (auto sp = sporadic_from_string(id)) return script_sporadic(*sp);
    if (id == "window") {
        if (!k) throw std::invalid_argument("the window script needs k");
        return window_script(*k);
    }
    if (!k) throw std::invalid_argument("family scripts need k");
    return script_family(family_or_throw(id), *k);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "four-element generating sets of finite partition lattices";

    py::class_<Partition>(m, "Partition")
        .def(py::init([](const std::string& text, int n) { return parse_prt(text, n); }),
             py::arg("text"), py::arg("n"))
        .def_static("bottom", &Partition::bottom, py::arg("n"))
        .def_static("top", &Partition::top, py::arg("n"))
        .def_static("atom", &Partition::atom, py::arg("n"), py::arg("i"), py::arg("j"))
        .def_static("from_blocks", &Partition::from_blocks, py::arg("n"), py::arg("blocks"))
        .def_property_readonly("n", &Partition::n)
        .def("height", &Partition::height)
        .def("block_count", &Partition::block_count)
        .def("is_atom", &Partition::is_atom)
        .def("nonsingleton_blocks", &Partition::nonsingleton_blocks)
        .def("relabel",
             [](const Partition& p, const std::vector<int>& image) {
                 return p.relabel(Permutation(image));
             },
             py::arg("image"))
        .def("__str__", [](const Partition& p) { return format_prt(p); })
        .def("__repr__",
             [](const Partition& p) {
                 return "Partition('" + format_prt(p) + "', " + std::to_string(p.n()) + ")";
             })
        .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; },
             py::is_operator())
        .def("__le__", [](const Partition& a, const Partition& b) { return leq(a, b); },
             py::is_operator())
        .def("__and__", [](const Partition& a, const Partition& b) { return meet(a, b); },
             py::is_operator())
        .def("__or__", [](const Partition& a, const Partition& b) { return join(a, b); },
             py::is_operator())
        .def("__hash__", [](const Partition& p) { return p.hash(); });

    m.def("parse_prt", &parse_prt, py::arg("text"), py::arg("n"));
    m.def("format_prt", &format_prt, py::arg("p"));
    m.def("meet", &meet);
    m.def("join", &join);
    m.def("leq", &leq);

    m.def("bell_number", &bell_number, py::arg("n"));
    m.def("enumerate_all_partitions", &enumerate_all_partitions, py::arg("n"),
          py::arg("cap") = 10);
    m.def(
        "closure",
        [](const std::vector<Partition>& phi, std::uint64_t budget, int jobs) {
            ClosureResult res = closure(phi, budget, jobs);
            py::dict d = dict_of(res.report);
            d["set"] = res.set;
            return d;
        },
        py::arg("phi"), py::arg("budget") = kDefaultPairBudget, py::arg("jobs") = 1,
        "Sublattice closure; returns the report dict plus the closed set under 'set'.");
    m.def(
        "generates",
        [](const std::vector<Partition>& phi, int n, std::uint64_t budget, int jobs) {
            return dict_of(generates(phi, n, budget, jobs));
        },
        py::arg("phi"), py::arg("n"), py::arg("budget") = kDefaultPairBudget,
        py::arg("jobs") = 1);
    m.def(
        "member_of_closure",
        [](const Partition& p, const std::vector<Partition>& phi,
           std::uint64_t budget) -> py::object {
            switch (member_of_closure(p, phi, budget)) {
                case Ternary::True: return py::bool_(true);
                case Ternary::False: return py::bool_(false);
                default: return py::none();
            }
        },
        py::arg("p"), py::arg("phi"), py::arg("budget") = kDefaultPairBudget,
        "True / False, or None when the pair budget ran out first.");

    py::class_<GeneratorQuad>(m, "GeneratorQuad")
        .def_readonly("n", &GeneratorQuad::n)
        .def_readonly("alpha", &GeneratorQuad::alpha)
        .def_readonly("beta", &GeneratorQuad::beta)
        .def_readonly("gamma", &GeneratorQuad::gamma)
        .def_readonly("delta", &GeneratorQuad::delta)
        .def_readonly("provenance", &GeneratorQuad::provenance)
        .def_readonly("target_index", &GeneratorQuad::target_index)
        .def("members", &GeneratorQuad::member_list)
        .def("target", &GeneratorQuad::target)
        .def("relabeled",
             [](const GeneratorQuad& q, const std::vector<int>& image) {
                 return q.relabeled(Permutation(image));
             },
             py::arg("image"))
        .def("__repr__", [](const GeneratorQuad& q) {
            return "GeneratorQuad(n=" + std::to_string(q.n) + ", provenance='" +
                   q.provenance + "')";
        });

    m.def("build_for", &build_for, py::arg("target"),
          "Generating quad of Part(n) whose target slot holds the given partition.");
    m.def(
        "family_quad",
        [](const std::string& id, int k) { return family_quad(family_or_throw(id), k); },
        py::arg("family"), py::arg("k"));
    m.def(
        "eligible_system",
        [](const GeneratorQuad& q, int u, int v) { return dict_of(eligible_system(q, u, v)); },
        py::arg("quad"), py::arg("u"), py::arg("v"));
    m.def(
        "extension_search",
        [](const GeneratorQuad& q, int m_steps, const std::string& mode,
           std::uint64_t budget) {
            ExtensionMode em;
            if (mode == "find")
                em = ExtensionMode::FindOne;
            else if (mode == "count")
                em = ExtensionMode::CountAll;
            else
                throw std::invalid_argument("mode must be 'find' or 'count'");
            return dict_of(extension_search(q, m_steps, em, budget));
        },
        py::arg("quad"), py::arg("m"), py::arg("mode") = "find",
        py::arg("budget") = kDefaultPairBudget);

    m.def(
        "run_script",
        [](const std::string& id, std::optional<int> k, bool witnesses) {
            ProofScript s = named_script(id, k);
            return dict_of(run_script(s, witnesses), s.id);
        },
        py::arg("id"), py::arg("k") = std::nullopt, py::arg("witnesses") = false,
        "Replay a named derivation script: a family id with k, 'window' with k, "
        "or one of n4/n5/n6/n7.");
    m.def(
        "run_script_for",
        [](const GeneratorQuad& q, bool witnesses) {
            ProofScript s = script_for_quad(q);
            return dict_of(run_script(s, witnesses), s.id);
        },
        py::arg("quad"), py::arg("witnesses") = false);
    m.def(
        "dump_script",
        [](const std::string& id, std::optional<int> k) {
            return dump_script(named_script(id, k));
        },
        py::arg("id"), py::arg("k") = std::nullopt);
    m.def(
        "window_check_aleph0",
        [](int k, const std::string& mode) {
            WindowMode wm;
            if (mode == "auto")
                wm = WindowMode::Auto;
            else if (mode == "closure")
                wm = WindowMode::Closure;
            else if (mode == "replay")
                wm = WindowMode::Replay;
            else
                throw std::invalid_argument("mode must be auto, closure or replay");
            return window_check_aleph0(k, wm);
        },
        py::arg("k"), py::arg("mode") = "auto");

    py::class_<LatticeTerm>(m, "LatticeTerm")
        .def(py::init([](const std::string& text, int k) { return parse_term(text, k); }),
             py::arg("text"), py::arg("k"))
        .def_property_readonly("arity", &LatticeTerm::arity)
        .def("depth", &LatticeTerm::depth)
        .def("node_count", &LatticeTerm::node_count)
        .def("__str__", [](const LatticeTerm& t) { return format_term(t); })
        .def("__repr__",
             [](const LatticeTerm& t) {
                 return "LatticeTerm('" + format_term(t) + "', " +
                        std::to_string(t.arity()) + ")";
             })
        .def("__eq__", [](const LatticeTerm& a, const LatticeTerm& b) { return a == b; },
             py::is_operator());

    m.def("parse_term", &parse_term, py::arg("text"), py::arg("k"));
    m.def("format_term", &format_term, py::arg("t"));
    m.def("eval_term", [](const LatticeTerm& t, const std::vector<Partition>& tuple) {
        return eval(t, tuple);
    });
    m.def(
        "random_terms",
        [](int k, int count, int max_depth, std::uint64_t seed) {
            return random_terms(k, count, max_depth, seed).terms;
        },
        py::arg("k"), py::arg("count"), py::arg("max_depth") = 6, py::arg("seed"));
    m.def(
        "derive_session_key",
        [](const std::vector<LatticeTerm>& terms, const std::vector<Partition>& tuple) {
            if (terms.empty()) throw std::invalid_argument("no terms");
            TermVector tv{terms.front().arity(), terms};
            return py::bytes(derive_session_key(tv, tuple));
        },
        py::arg("terms"), py::arg("tuple"),
        "Newline-joined canonical evaluations, as raw bytes.");

    m.def("emit_graph",
          [](const std::string& family, int k) { return emit_graph(family, k); },
          py::arg("family"), py::arg("k"));

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
