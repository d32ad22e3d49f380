#include "partlat/replay.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "partlat/closure.hpp"

namespace partlat {

namespace {

// Recipes are built as little name-referencing expression trees and lowered
// to a LatticeTerm plus a name-per-variable table when a script is finalized.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum Kind { Ref, Meet, Join } kind;
    std::string name;
    ExprPtr left, right;
};

ExprPtr eref(std::string name) {
    return std::make_shared<ExprNode>(ExprNode{ExprNode::Ref, std::move(name), nullptr, nullptr});
}

ExprPtr emeet(ExprPtr a, ExprPtr b) {
    return std::make_shared<ExprNode>(ExprNode{ExprNode::Meet, {}, std::move(a), std::move(b)});
}

ExprPtr ejoin(ExprPtr a, ExprPtr b) {
    return std::make_shared<ExprNode>(ExprNode{ExprNode::Join, {}, std::move(a), std::move(b)});
}

void collect_refs(const ExprPtr& e, std::vector<std::string>& order, std::set<std::string>& seen) {
    if (e->kind == ExprNode::Ref) {
        if (seen.insert(e->name).second) order.push_back(e->name);
        return;
    }
    collect_refs(e->left, order, seen);
    collect_refs(e->right, order, seen);
}

LatticeTerm lower_expr(const ExprPtr& e, const std::map<std::string, int>& index, int arity) {
    switch (e->kind) {
        case ExprNode::Ref: return LatticeTerm::variable(index.at(e->name), arity);
        case ExprNode::Meet:
            return LatticeTerm::meet(lower_expr(e->left, index, arity),
                                     lower_expr(e->right, index, arity));
        case ExprNode::Join:
            return LatticeTerm::join(lower_expr(e->left, index, arity),
                                     lower_expr(e->right, index, arity));
    }
    throw std::logic_error("unreachable");
}

struct StepSpec {
    std::string name;
    Partition expected;
    ExprPtr recipe;
};

StepSpec mk_named(std::string name, int n, const std::vector<std::vector<int>>& blocks,
                  ExprPtr recipe) {
    return {std::move(name), Partition::from_blocks(n, blocks), std::move(recipe)};
}

StepSpec mk_step(int n, const std::vector<std::vector<int>>& blocks, ExprPtr recipe) {
    Partition p = Partition::from_blocks(n, blocks);
    std::string name = format_prt(p);
    return {std::move(name), std::move(p), std::move(recipe)};
}

void wrap_all(std::vector<StepSpec>& steps, const std::string& wrap) {
    for (auto& s : steps) s.recipe = emeet(s.recipe, eref(wrap));
}

void append(std::vector<StepSpec>& out, std::vector<StepSpec> more) {
    for (auto& s : more) out.push_back(std::move(s));
}

ProofScript finalize(std::string id, GeneratorQuad quad, std::array<std::string, 4> names,
                     std::vector<StepSpec> specs, std::vector<int> perimeter) {
    ProofScript s;
    s.id = std::move(id);
    s.generators = std::move(quad);
    s.generator_names = std::move(names);
    for (auto& sp : specs) {
        std::vector<std::string> order;
        std::set<std::string> seen;
        collect_refs(sp.recipe, order, seen);
        std::map<std::string, int> index;
        for (int t = 0; t < static_cast<int>(order.size()); ++t) index[order[t]] = t + 1;
        LatticeTerm term = lower_expr(sp.recipe, index, static_cast<int>(order.size()));
        s.steps.push_back(
            ProofStep{std::move(sp.name), std::move(sp.expected), std::move(term), std::move(order)});
    }
    s.goal.perimeter = std::move(perimeter);
    return s;
}

std::string atom_name(int n, int x, int y) { return format_prt(Partition::atom(n, x, y)); }

struct GenNames {
    std::string alpha, beta, gamma, delta;
};

// beta0 := beta & (alpha | delta) and gamma0 := gamma & (alpha | delta);
// their values are the ladder pair partitions with the top rung removed.
std::vector<StepSpec> ladder_sub_steps(int n, int k, const std::vector<int>& A,
                                       const std::vector<int>& B, const GenNames& g) {
    std::vector<std::vector<int>> b0, g0;
    for (int i = 1; i <= k - 1; ++i) {
        b0.push_back({A[i], B[i + 1]});
        g0.push_back({B[i], A[i + 1]});
    }
    std::vector<StepSpec> out;
    out.push_back(mk_named("beta0", n, b0, emeet(eref(g.beta), ejoin(eref(g.alpha), eref(g.delta)))));
    out.push_back(
        mk_named("gamma0", n, g0, emeet(eref(g.gamma), ejoin(eref(g.alpha), eref(g.delta)))));
    return out;
}

// Works its way up the ladder rungs: the first rung, the even-distance helper,
// the two bottom chain edges, the two bottom diagonals, the second rung, and
// then one nine-step block per level.  Establishes every ladder edge between
// indices 1..k.
std::vector<StepSpec> ladder_interior(int n, int k, const std::vector<int>& A,
                                      const std::vector<int>& B, const std::string& alpha,
                                      const std::string& beta0, const std::string& gamma0,
                                      const std::string& delta) {
    std::vector<StepSpec> out;
    auto nm = [&](int x, int y) { return atom_name(n, x, y); };

    out.push_back(mk_step(n, {{A[1], B[1]}}, eref(alpha)));

    {
        std::vector<std::vector<int>> blocks;
        for (int start = 1; start <= 2; ++start) {
            std::vector<int> ab, bb;
            for (int i = start; i <= k; i += 2) {
                ab.push_back(A[i]);
                bb.push_back(B[i]);
            }
            if (ab.size() >= 2) blocks.push_back(ab);
            if (bb.size() >= 2) blocks.push_back(bb);
        }
        out.push_back(
            mk_named("eps", n, blocks, emeet(ejoin(eref(beta0), eref(gamma0)), eref(delta))));
    }

    out.push_back(
        mk_step(n, {{A[1], A[2]}}, emeet(ejoin(eref(alpha), eref(gamma0)), eref(delta))));
    out.push_back(
        mk_step(n, {{B[1], B[2]}}, emeet(ejoin(eref(alpha), eref(beta0)), eref(delta))));
    out.push_back(mk_step(
        n, {{A[1], B[2]}},
        emeet(ejoin(eref(nm(A[1], B[1])), eref(nm(B[1], B[2]))), eref(beta0))));
    out.push_back(mk_step(
        n, {{B[1], A[2]}},
        emeet(ejoin(eref(nm(A[1], B[1])), eref(nm(A[1], A[2]))), eref(gamma0))));
    out.push_back(mk_step(
        n, {{A[2], B[2]}},
        emeet(ejoin(eref(nm(A[1], A[2])), eref(nm(A[1], B[2]))),
              ejoin(eref(nm(A[2], B[1])), eref(nm(B[1], B[2]))))));

    for (int i = 2; i <= k - 1; ++i) {
        const int p = i - 1, q = i, r = i + 1;
        const std::string aqbq = nm(A[q], B[q]);
        StepSpec ny_a = mk_step(n, {{A[q], A[r]}, {B[p], B[q]}},
                                emeet(ejoin(eref(aqbq), eref(gamma0)), eref(delta)));
        StepSpec ny_b = mk_step(n, {{B[q], B[r]}, {A[p], A[q]}},
                                emeet(ejoin(eref(aqbq), eref(beta0)), eref(delta)));
        const std::string ny_a_name = ny_a.name;
        const std::string ny_b_name = ny_b.name;
        out.push_back(std::move(ny_a));
        out.push_back(std::move(ny_b));
        out.push_back(mk_step(
            n, {{A[p], A[r]}},
            emeet(ejoin(eref(ny_a_name), eref(nm(A[p], A[q]))), eref("eps"))));
        out.push_back(mk_step(
            n, {{B[p], B[r]}},
            emeet(ejoin(eref(ny_b_name), eref(nm(B[p], B[q]))), eref("eps"))));
        out.push_back(mk_step(
            n, {{A[q], A[r]}},
            emeet(ejoin(eref(nm(A[p], A[q])), eref(nm(A[p], A[r]))), eref(ny_a_name))));
        out.push_back(mk_step(
            n, {{B[q], B[r]}},
            emeet(ejoin(eref(nm(B[p], B[q])), eref(nm(B[p], B[r]))), eref(ny_b_name))));
        out.push_back(mk_step(
            n, {{A[r], B[q]}},
            emeet(ejoin(eref(nm(A[q], A[r])), eref(aqbq)), eref(gamma0))));
        out.push_back(mk_step(
            n, {{B[r], A[q]}},
            emeet(ejoin(eref(nm(B[q], B[r])), eref(aqbq)), eref(beta0))));
        out.push_back(mk_step(
            n, {{A[r], B[r]}},
            emeet(ejoin(eref(nm(A[r], B[q])), eref(nm(B[q], B[r]))),
                  ejoin(eref(nm(A[q], A[r])), eref(nm(A[q], B[r]))))));
    }
    return out;
}

// The two top edges reaching the shared vertex a_{k+1} = b_{k+1}.
std::vector<StepSpec> ladder_finale(int n, int k, const std::vector<int>& A,
                                    const std::vector<int>& B, const std::string& beta,
                                    const std::string& gamma) {
    std::vector<StepSpec> out;
    const std::string akbk = atom_name(n, A[k], B[k]);
    out.push_back(mk_step(n, {{A[k], A[k + 1]}},
                          emeet(ejoin(eref(akbk), eref(gamma)), eref(beta))));
    out.push_back(mk_step(n, {{B[k], B[k + 1]}},
                          emeet(ejoin(eref(akbk), eref(beta)), eref(gamma))));
    return out;
}

// Expr mirror of circle_witness over the named edge atoms of a cycle.
ExprPtr witness_expr(int n, const std::vector<int>& cycle, int i, int j) {
    const int len = static_cast<int>(cycle.size());
    auto edge = [&](int t) { return eref(atom_name(n, cycle[t - 1], cycle[t % len])); };
    if (j == i % len + 1) return edge(i);
    if (i == j % len + 1) return edge(j);
    auto chain = [&](int from, int to) {
        ExprPtr acc = edge(from);
        for (int t = from % len + 1; t != to; t = t % len + 1) acc = ejoin(acc, edge(t));
        return acc;
    };
    return emeet(chain(i, j), chain(j, i));
}

void fill_labels(int k, std::vector<int>& A, std::vector<int>& B) {
    A.assign(k + 2, 0);
    B.assign(k + 2, 0);
    for (int i = 1; i <= k + 1; ++i) A[i] = i;
    for (int i = 1; i <= k; ++i) B[i] = k + 1 + i;
    B[k + 1] = k + 1;
}

std::vector<int> ladder_perimeter(int k, const std::vector<int>& A, const std::vector<int>& B) {
    std::vector<int> per;
    for (int i = 1; i <= k + 1; ++i) per.push_back(A[i]);
    for (int i = k; i >= 1; --i) per.push_back(B[i]);
    return per;
}

// Everything the even type-3 script derives, parameterized by the generator
// names so the odd type-3 script can reuse it with its restricted generators
// and one more wrapping meet.
std::vector<StepSpec> evenhtwo_body(int k, int n, const GenNames& g) {
    std::vector<int> A, B;
    fill_labels(k, A, B);
    const int c = 2 * k + 2;

    std::vector<StepSpec> out;
    {
        std::vector<int> ladder_block;
        for (int x = 1; x <= 2 * k + 1; ++x) ladder_block.push_back(x);
        out.push_back(mk_named("mu", n, {ladder_block}, ejoin(eref(g.beta), eref(g.gamma))));
    }
    std::vector<std::vector<int>> beta_blocks, gamma_blocks;
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        beta_blocks.push_back({A[i], B[i + 1]});
        gamma_blocks.push_back({B[i], A[i + 1]});
        a_chain.push_back(A[i]);
        b_chain.push_back(B[i]);
    }
    out.push_back(mk_named("alpha_A", n, {{A[1], B[1]}}, emeet(eref(g.alpha), eref("mu"))));
    out.push_back(mk_named("beta_A", n, beta_blocks, emeet(eref(g.beta), eref("mu"))));
    out.push_back(mk_named("gamma_A", n, gamma_blocks, emeet(eref(g.gamma), eref("mu"))));
    out.push_back(
        mk_named("delta_A", n, {a_chain, b_chain}, emeet(eref(g.delta), eref("mu"))));

    {
        GenNames ga{"alpha_A", "beta_A", "gamma_A", "delta_A"};
        std::vector<StepSpec> ladder = ladder_sub_steps(n, k, A, B, ga);
        append(ladder, ladder_interior(n, k, A, B, ga.alpha, "beta0", "gamma0", ga.delta));
        append(ladder, ladder_finale(n, k, A, B, ga.beta, ga.gamma));
        wrap_all(ladder, "mu");
        append(out, std::move(ladder));
    }

    const std::vector<int> aper = ladder_perimeter(k, A, B);
    out.push_back(mk_step(n, {{A[1], A[k + 1]}}, witness_expr(n, aper, 1, k + 1)));
    out.push_back(mk_step(n, {{A[k + 1], B[1]}}, witness_expr(n, aper, k + 1, 2 * k + 1)));

    out.push_back(mk_step(
        n, {{A[1], c}},
        emeet(eref(g.alpha), ejoin(eref(atom_name(n, A[1], A[k + 1])), eref(g.delta)))));
    out.push_back(mk_step(
        n, {{c, B[1]}},
        emeet(eref(g.alpha), ejoin(eref(g.delta), eref(atom_name(n, A[k + 1], B[1]))))));
    return out;
}

}  // namespace

ProofScript script_oddat(int k) {
    GeneratorQuad quad = atom_odd(k);
    const int n = quad.n;
    std::vector<int> A, B;
    fill_labels(k, A, B);
    GenNames g{"alpha", "beta", "gamma", "delta"};
    std::vector<StepSpec> steps = ladder_sub_steps(n, k, A, B, g);
    append(steps, ladder_interior(n, k, A, B, "alpha", "beta0", "gamma0", "delta"));
    append(steps, ladder_finale(n, k, A, B, "beta", "gamma"));
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), ladder_perimeter(k, A, B));
}

ProofScript script_evenat(int k) {
    GeneratorQuad quad = atom_even(k);
    const int n = quad.n;
    std::vector<int> A, B;
    fill_labels(k, A, B);
    const int c = 2 * k + 2;
    GenNames g{"alpha", "beta", "gamma", "delta"};
    std::vector<StepSpec> steps = ladder_sub_steps(n, k, A, B, g);
    append(steps, ladder_interior(n, k, A, B, "alpha", "beta0", "gamma0", "delta"));
    append(steps, ladder_finale(n, k, A, B, "beta", "gamma"));
    const std::string a1b1 = atom_name(n, A[1], B[1]);
    steps.push_back(
        mk_step(n, {{A[1], c}}, emeet(eref("beta"), ejoin(eref(a1b1), eref("gamma")))));
    steps.push_back(
        mk_step(n, {{c, B[1]}}, emeet(eref("gamma"), ejoin(eref("beta"), eref(a1b1)))));
    std::vector<int> per = ladder_perimeter(k, A, B);
    per.push_back(c);
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), std::move(per));
}

ProofScript script_evenhtwo(int k) {
    GeneratorQuad quad = type3_even(k);
    const int n = quad.n;
    std::vector<int> A, B;
    fill_labels(k, A, B);
    std::vector<StepSpec> steps =
        evenhtwo_body(k, n, GenNames{"alpha", "beta", "gamma", "delta"});
    std::vector<int> per = ladder_perimeter(k, A, B);
    per.push_back(2 * k + 2);
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), std::move(per));
}

ProofScript script_oddhtwo(int k) {
    GeneratorQuad quad = type3_odd(k);
    const int n = quad.n;
    std::vector<int> A, B;
    fill_labels(k, A, B);
    const int c = 2 * k + 2;
    const int d = 2 * k + 3;

    std::vector<StepSpec> steps;
    {
        std::vector<int> cblock;
        for (int x = 1; x <= 2 * k + 2; ++x) cblock.push_back(x);
        steps.push_back(mk_named("nu", n, {cblock}, ejoin(eref("alpha"), eref("delta"))));
    }
    std::vector<std::vector<int>> beta_blocks, gamma_blocks;
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        beta_blocks.push_back({A[i], B[i + 1]});
        gamma_blocks.push_back({B[i], A[i + 1]});
        a_chain.push_back(A[i]);
        b_chain.push_back(B[i]);
    }
    steps.push_back(mk_named("alpha_C", n, {{A[1], B[1], c}}, emeet(eref("alpha"), eref("nu"))));
    steps.push_back(mk_named("beta_C", n, beta_blocks, emeet(eref("beta"), eref("nu"))));
    steps.push_back(mk_named("gamma_C", n, gamma_blocks, emeet(eref("gamma"), eref("nu"))));
    steps.push_back(mk_named("delta_C", n, {a_chain, b_chain, {c, A[k + 1]}},
                             emeet(eref("delta"), eref("nu"))));

    {
        std::vector<StepSpec> body =
            evenhtwo_body(k, n, GenNames{"alpha_C", "beta_C", "gamma_C", "delta_C"});
        wrap_all(body, "nu");
        append(steps, std::move(body));
    }

    std::vector<int> cper = ladder_perimeter(k, A, B);
    cper.push_back(c);
    // b2 sits at position 2k on that cycle, c at position 2k+2.
    steps.push_back(mk_step(n, {{B[2], c}}, witness_expr(n, cper, 2 * k, 2 * k + 2)));

    const std::string a1b1 = atom_name(n, A[1], B[1]);
    steps.push_back(
        mk_step(n, {{A[1], d}}, emeet(eref("beta"), ejoin(eref(a1b1), eref("gamma")))));
    steps.push_back(
        mk_step(n, {{d, B[1]}}, emeet(eref("gamma"), ejoin(eref("beta"), eref(a1b1)))));

    std::vector<int> per;
    for (int i = 1; i <= k + 1; ++i) per.push_back(A[i]);
    for (int i = k; i >= 2; --i) per.push_back(B[i]);
    per.push_back(c);
    per.push_back(B[1]);
    per.push_back(d);
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), std::move(per));
}

ProofScript script_family(Family f, int k) {
    switch (f) {
        case Family::OddAtom: return script_oddat(k);
        case Family::EvenAtom: return script_evenat(k);
        case Family::EvenType3: return script_evenhtwo(k);
        case Family::OddType3: return script_oddhtwo(k);
    }
    throw std::logic_error("unknown family");
}

std::optional<SporadicId> sporadic_from_string(const std::string& s) {
    if (s == "n4") return SporadicId::N4;
    if (s == "n5") return SporadicId::N5;
    if (s == "n6") return SporadicId::N6;
    if (s == "n7") return SporadicId::N7;
    return std::nullopt;
}

namespace {

StepSpec sp(int n, const char* expected, ExprPtr recipe) {
    Partition p = parse_prt(expected, n);
    return {format_prt(p), std::move(p), std::move(recipe)};
}

ProofScript sporadic_n4() {
    GeneratorQuad quad = quad_n4_mixed();
    std::vector<StepSpec> steps;
    steps.push_back(sp(4, "prt(12)", emeet(eref("alpha"), eref("gamma"))));
    steps.push_back(sp(4, "prt(34)", emeet(eref("alpha"), eref("delta"))));
    steps.push_back(sp(4, "prt(14)", emeet(eref("gamma"), eref("delta"))));
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), {1, 2, 3, 4});
}

ProofScript sporadic_n5() {
    GeneratorQuad quad = quad_n5_type3();
    std::vector<StepSpec> steps;
    steps.push_back(sp(5, "prt(1235)", ejoin(eref("alpha"), eref("beta"))));
    steps.push_back(sp(5, "prt(2345)", ejoin(eref("beta"), eref("gamma"))));
    steps.push_back(sp(5, "prt(1345)", ejoin(eref("beta"), eref("delta"))));
    steps.push_back(sp(5, "prt(23)", emeet(eref("alpha"), eref("prt(2345)"))));
    steps.push_back(sp(5, "prt(34)", emeet(eref("gamma"), eref("prt(1345)"))));
    steps.push_back(sp(5, "prt(15)", emeet(eref("delta"), eref("prt(1235)"))));
    steps.push_back(sp(5, "prt(45)", emeet(eref("delta"), eref("prt(2345)"))));
    steps.push_back(sp(5, "prt(125;34)", ejoin(eref("gamma"), eref("prt(15)"))));
    steps.push_back(sp(5, "prt(12)", emeet(eref("alpha"), eref("prt(125;34)"))));
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), {1, 2, 3, 4, 5});
}

ProofScript sporadic_n6() {
    GeneratorQuad quad = quad_n6_atom();
    std::vector<StepSpec> steps;
    steps.push_back(sp(6, "prt(125;34)", ejoin(eref("alpha"), eref("beta"))));
    steps.push_back(sp(6, "prt(124;36)", ejoin(eref("alpha"), eref("delta"))));
    steps.push_back(sp(6, "prt(134;256)", ejoin(eref("beta"), eref("gamma"))));
    steps.push_back(sp(6, "prt(23456)", ejoin(eref("beta"), eref("delta"))));
    steps.push_back(sp(6, "prt(1356;24)", ejoin(eref("gamma"), eref("delta"))));
    steps.push_back(sp(6, "prt(56)", emeet(eref("gamma"), eref("prt(23456)"))));
    steps.push_back(sp(6, "prt(15)", emeet(eref("prt(125;34)"), eref("prt(1356;24)"))));
    steps.push_back(sp(6, "prt(14)", emeet(eref("prt(124;36)"), eref("prt(134;256)"))));
    steps.push_back(sp(6, "prt(124)", ejoin(eref("alpha"), eref("prt(14)"))));
    steps.push_back(sp(6, "prt(1356)", ejoin(eref("gamma"), eref("prt(15)"))));
    steps.push_back(sp(6, "prt(134;56)", ejoin(eref("gamma"), eref("prt(14)"))));
    steps.push_back(sp(6, "prt(34)", emeet(eref("beta"), eref("prt(134;56)"))));
    steps.push_back(sp(6, "prt(24)", emeet(eref("delta"), eref("prt(124)"))));
    steps.push_back(sp(6, "prt(36)", emeet(eref("delta"), eref("prt(1356)"))));
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), {1, 2, 4, 3, 6, 5});
}

ProofScript sporadic_n7() {
    GeneratorQuad quad = quad_n7_type3();
    std::vector<StepSpec> steps;
    steps.push_back(sp(7, "prt(12347;56)", ejoin(eref("alpha"), eref("beta"))));
    steps.push_back(sp(7, "prt(12357;46)", ejoin(eref("alpha"), eref("gamma"))));
    steps.push_back(sp(7, "prt(123456)", ejoin(eref("alpha"), eref("delta"))));
    steps.push_back(sp(7, "prt(17)", emeet(eref("beta"), eref("prt(12357;46)"))));
    steps.push_back(sp(7, "prt(14;56)", emeet(eref("beta"), eref("prt(123456)"))));
    steps.push_back(sp(7, "prt(37)", emeet(eref("gamma"), eref("prt(12347;56)"))));
    steps.push_back(sp(7, "prt(35;46)", emeet(eref("gamma"), eref("prt(123456)"))));
    steps.push_back(sp(7, "prt(34)", emeet(eref("delta"), eref("prt(12347;56)"))));
    steps.push_back(sp(7, "prt(15)", emeet(eref("delta"), eref("prt(12357;46)"))));
    steps.push_back(sp(7, "prt(1234)", ejoin(eref("alpha"), eref("prt(34)"))));
    steps.push_back(sp(7, "prt(14567)", ejoin(eref("beta"), eref("prt(15)"))));
    steps.push_back(sp(7, "prt(34567)", ejoin(eref("gamma"), eref("prt(34)"))));
    steps.push_back(sp(7, "prt(157;26;34)", ejoin(eref("delta"), eref("prt(17)"))));
    steps.push_back(sp(7, "prt(1456)", ejoin(eref("prt(14;56)"), eref("prt(15)"))));
    steps.push_back(sp(7, "prt(3456)", ejoin(eref("prt(35;46)"), eref("prt(34)"))));
    steps.push_back(sp(7, "prt(14)", emeet(eref("beta"), eref("prt(1234)"))));
    steps.push_back(sp(7, "prt(47;56)", emeet(eref("beta"), eref("prt(34567)"))));
    steps.push_back(sp(7, "prt(56)", emeet(eref("beta"), eref("prt(3456)"))));
    steps.push_back(sp(7, "prt(46;57)", emeet(eref("gamma"), eref("prt(14567)"))));
    steps.push_back(sp(7, "prt(57)", emeet(eref("gamma"), eref("prt(157;26;34)"))));
    steps.push_back(sp(7, "prt(46)", emeet(eref("gamma"), eref("prt(1456)"))));
    steps.push_back(sp(7, "prt(1256;347)", ejoin(eref("delta"), eref("prt(47;56)"))));
    steps.push_back(sp(7, "prt(157;2346)", ejoin(eref("delta"), eref("prt(46;57)"))));
    steps.push_back(sp(7, "prt(12)", emeet(eref("alpha"), eref("prt(1256;347)"))));
    steps.push_back(sp(7, "prt(23)", emeet(eref("alpha"), eref("prt(157;2346)"))));
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"},
                    std::move(steps), {1, 2, 3, 7, 5, 6, 4});
}

// The n=4 all-atom quad needs no derivation: its four generators are exactly
// the edges of the 4-cycle.
ProofScript sporadic_n4_atoms() {
    GeneratorQuad quad = quad_n4_atoms();
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta", "gamma", "delta"}, {},
                    {1, 2, 3, 4});
}

}  // namespace

ProofScript script_sporadic(SporadicId id) {
    switch (id) {
        case SporadicId::N4: return sporadic_n4();
        case SporadicId::N5: return sporadic_n5();
        case SporadicId::N6: return sporadic_n6();
        case SporadicId::N7: return sporadic_n7();
    }
    throw std::logic_error("unknown sporadic id");
}

ProofScript window_script(int k) {
    if (k < 2) throw std::invalid_argument("window_script needs k >= 2");
    const int n = 2 * k;
    std::vector<int> A(k + 1, 0), B(k + 1, 0);
    for (int i = 1; i <= k; ++i) {
        A[i] = i;
        B[i] = k + i;
    }
    GeneratorQuad quad;
    quad.n = n;
    quad.alpha = Partition::atom(n, A[1], B[1]);
    std::vector<std::vector<int>> b0, g0;
    for (int i = 1; i <= k - 1; ++i) {
        b0.push_back({A[i], B[i + 1]});
        g0.push_back({B[i], A[i + 1]});
    }
    quad.beta = Partition::from_blocks(n, b0);
    quad.gamma = Partition::from_blocks(n, g0);
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        a_chain.push_back(A[i]);
        b_chain.push_back(B[i]);
    }
    quad.delta = Partition::from_blocks(n, {a_chain, b_chain});
    quad.provenance = "window(k=" + std::to_string(k) + ")";

    std::vector<StepSpec> steps =
        ladder_interior(n, k, A, B, "alpha", "beta0", "gamma0", "delta");
    std::vector<int> per;
    for (int i = 1; i <= k; ++i) per.push_back(A[i]);
    for (int i = k; i >= 1; --i) per.push_back(B[i]);
    std::string id = quad.provenance;
    return finalize(std::move(id), std::move(quad), {"alpha", "beta0", "gamma0", "delta"},
                    std::move(steps), std::move(per));
}

namespace {

ProofScript relabel_script(ProofScript s, const Permutation& pi) {
    s.generators = s.generators.relabeled(pi);
    for (auto& st : s.steps) st.expected = st.expected.relabel(pi);
    for (auto& v : s.goal.perimeter) v = pi.apply(v);
    s.id = s.generators.provenance;
    return s;
}

bool parse_k_form(const std::string& base, const char* prefix, int* k) {
    const std::string p(prefix);
    if (base.size() <= p.size() + 1 || base.compare(0, p.size(), p) != 0 || base.back() != ')')
        return false;
    try {
        *k = std::stoi(base.substr(p.size(), base.size() - p.size() - 1));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace

ProofScript script_for_quad(const GeneratorQuad& quad) {
    const std::string base = provenance_base(quad.provenance);
    const auto pi = provenance_relabel(quad.provenance);
    ProofScript s;
    int k = 0;
    if (parse_k_form(base, "oddat(k=", &k))
        s = script_oddat(k);
    else if (parse_k_form(base, "evenat(k=", &k))
        s = script_evenat(k);
    else if (parse_k_form(base, "evenhtwo(k=", &k))
        s = script_evenhtwo(k);
    else if (parse_k_form(base, "oddhtwo(k=", &k))
        s = script_oddhtwo(k);
    else if (parse_k_form(base, "window(k=", &k))
        s = window_script(k);
    else if (base == "sporadic-n4-atoms")
        s = sporadic_n4_atoms();
    else if (base == "sporadic-n4-mixed")
        s = script_sporadic(SporadicId::N4);
    else if (base == "sporadic-n5")
        s = script_sporadic(SporadicId::N5);
    else if (base == "sporadic-n6")
        s = script_sporadic(SporadicId::N6);
    else if (base == "sporadic-n7")
        s = script_sporadic(SporadicId::N7);
    else
        throw std::invalid_argument("no replay script for provenance '" + quad.provenance + "'");
    if (pi) s = relabel_script(std::move(s), *pi);
    if (s.generators.n != quad.n || !(s.generators.alpha == quad.alpha) ||
        !(s.generators.beta == quad.beta) || !(s.generators.gamma == quad.gamma) ||
        !(s.generators.delta == quad.delta))
        throw std::invalid_argument("quad does not match its provenance '" + quad.provenance + "'");
    s.generators.target_index = quad.target_index;
    return s;
}

LatticeTerm circle_witness(const std::vector<int>& cycle, int i, int j) {
    const int len = static_cast<int>(cycle.size());
    if (len < 3) throw std::invalid_argument("circle_witness needs at least three vertices");
    {
        std::set<int> seen(cycle.begin(), cycle.end());
        if (static_cast<int>(seen.size()) != len)
            throw std::invalid_argument("cycle vertices must be distinct");
    }
    if (i < 1 || i > len || j < 1 || j > len)
        throw std::invalid_argument("cycle positions out of range");
    if (i == j) throw std::invalid_argument("cycle positions must differ");
    auto var = [&](int t) { return LatticeTerm::variable(t, len); };
    if (j == i % len + 1) return var(i);
    if (i == j % len + 1) return var(j);
    auto chain = [&](int from, int to) {
        LatticeTerm acc = var(from);
        for (int t = from % len + 1; t != to; t = t % len + 1)
            acc = LatticeTerm::join(acc, var(t));
        return acc;
    };
    return LatticeTerm::meet(chain(i, j), chain(j, i));
}

std::vector<Partition> atom_join_decomposition(const Partition& p) {
    std::vector<Partition> out;
    for (const auto& blk : p.nonsingleton_blocks())
        for (std::size_t t = 1; t < blk.size(); ++t)
            out.push_back(Partition::atom(p.n(), blk[0], blk[t]));
    return out;
}

ReplayReport run_script(const ProofScript& script, bool check_witnesses) {
    const GeneratorQuad& q = script.generators;
    const int n = q.n;
    if (n < 2) throw std::invalid_argument("script ground set is too small");
    for (int i = 0; i < 4; ++i)
        if (q.member(i).n() != n)
            throw std::invalid_argument("generator ground-set size mismatch");

    std::set<std::string> names;
    for (const auto& g : script.generator_names) {
        if (g.empty() || !names.insert(g).second)
            throw std::invalid_argument("generator names must be distinct and nonempty");
    }
    for (std::size_t s = 0; s < script.steps.size(); ++s) {
        const auto& st = script.steps[s];
        if (st.name.empty())
            throw std::invalid_argument("step " + std::to_string(s) + " has an empty name");
        if (static_cast<int>(st.refs.size()) != st.recipe.arity())
            throw std::invalid_argument("step '" + st.name + "': refs/arity mismatch");
        for (const auto& r : st.refs)
            if (!names.count(r))
                throw std::invalid_argument("step '" + st.name + "' references unknown name '" +
                                            r + "'");
        if (!names.insert(st.name).second)
            throw std::invalid_argument("duplicate step name '" + st.name + "'");
        if (st.expected.n() != n)
            throw std::invalid_argument("step '" + st.name + "': wrong ground-set size");
    }
    for (int v : script.goal.perimeter)
        if (v < 1 || v > n) throw std::invalid_argument("goal perimeter element out of range");
    {
        std::set<int> pv(script.goal.perimeter.begin(), script.goal.perimeter.end());
        if (pv.size() != script.goal.perimeter.size())
            throw std::invalid_argument("goal perimeter repeats a vertex");
    }

    ReplayReport rep;
    rep.steps_total = script.steps.size();
    std::unordered_map<std::string, Partition> env;
    for (int i = 0; i < 4; ++i) env.emplace(script.generator_names[i], q.member(i));

    for (std::size_t s = 0; s < script.steps.size(); ++s) {
        const auto& st = script.steps[s];
        std::vector<Partition> tuple;
        tuple.reserve(st.refs.size());
        for (const auto& r : st.refs) tuple.push_back(env.at(r));
        const Partition got = eval(st.recipe, tuple);
        if (!(got == st.expected)) {
            rep.failed_step = s;
            rep.failure = "step " + std::to_string(s) + " (" + st.name + "): evaluated to " +
                          format_prt(got) + ", expected " + format_prt(st.expected);
            break;
        }
        env.emplace(st.name, st.expected);
        ++rep.steps_passed;
    }
    const bool steps_ok = rep.steps_passed == rep.steps_total;

    std::set<Partition> values;
    for (const auto& [name, value] : env) values.insert(value);
    for (const auto& v : values)
        if (v.is_atom()) ++rep.established_atoms;

    const auto& per = script.goal.perimeter;
    rep.goal_perimeter_ok = static_cast<int>(per.size()) == n;
    if (per.size() >= 3) {
        rep.goal_edges_ok = true;
        for (std::size_t t = 0; t < per.size(); ++t) {
            const Partition e =
                Partition::atom(n, per[t], per[(t + 1) % per.size()]);
            if (!values.count(e)) {
                rep.goal_edges_ok = false;
                if (rep.failure.empty())
                    rep.failure = "goal edge " + format_prt(e) + " not established";
            }
        }
    } else if (rep.failure.empty()) {
        rep.failure = "goal perimeter too short";
    }
    rep.pass = steps_ok && rep.goal_perimeter_ok && rep.goal_edges_ok;
    if (!rep.goal_perimeter_ok && rep.failure.empty())
        rep.failure = "goal perimeter does not cover the ground set";

    if (check_witnesses && rep.pass) {
        rep.witnesses_checked = true;
        const int len = static_cast<int>(per.size());
        std::vector<Partition> edges;
        edges.reserve(len);
        for (int t = 0; t < len; ++t)
            edges.push_back(Partition::atom(n, per[t], per[(t + 1) % len]));
        for (int i = 1; i <= len && rep.pass; ++i) {
            for (int j = i + 1; j <= len; ++j) {
                const LatticeTerm w = circle_witness(per, i, j);
                const Partition got = eval(w, edges);
                ++rep.witness_evals;
                if (!(got == Partition::atom(n, per[i - 1], per[j - 1]))) {
                    rep.pass = false;
                    rep.failure = "cycle witness for (" + std::to_string(per[i - 1]) + "," +
                                  std::to_string(per[j - 1]) + ") evaluated to " + format_prt(got);
                    break;
                }
            }
        }
    }
    return rep;
}

bool window_check_aleph0(int k, WindowMode mode) {
    if (k < 2) throw std::invalid_argument("window check needs k >= 2");
    if (mode == WindowMode::Auto) mode = k <= 6 ? WindowMode::Closure : WindowMode::Replay;
    ProofScript s = window_script(k);
    if (mode == WindowMode::Closure)
        return generates(s.generators.member_list(), 2 * k).verdict == Verdict::Generates;
    return run_script(s).pass;
}

}  // namespace partlat
