#include "partlat/quads.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "partlat/term.hpp"

namespace partlat {

namespace {

std::string relabel_suffix(const Permutation& pi) {
    std::ostringstream out;
    out << "+relabel[";
    for (int x = 1; x <= pi.n(); ++x) {
        if (x > 1) out << ',';
        out << pi.apply(x);
    }
    out << ']';
    return out.str();
}

// Splits "base+relabel[...]" back into the base id and the permutation.
std::optional<Permutation> split_relabel_suffix(const std::string& prov, std::string* base) {
    auto pos = prov.rfind("+relabel[");
    if (pos == std::string::npos || prov.empty() || prov.back() != ']') {
        *base = prov;
        return std::nullopt;
    }
    *base = prov.substr(0, pos);
    std::string body = prov.substr(pos + 9, prov.size() - pos - 10);
    std::vector<int> image;
    std::istringstream in(body);
    std::string tok;
    while (std::getline(in, tok, ',')) image.push_back(std::stoi(tok));
    return Permutation(std::move(image));
}

// sigma with relabel(from, sigma) == to.  Nonsingleton blocks are matched by
// position (both lists are ordered by smallest element), remaining elements
// in ascending order.
Permutation match_onto(const Partition& from, const Partition& to) {
    if (from.n() != to.n()) throw std::invalid_argument("match_onto: ground sets differ");
    const int n = from.n();
    auto fb = from.nonsingleton_blocks();
    auto tb = to.nonsingleton_blocks();
    if (fb.size() != tb.size()) throw std::invalid_argument("match_onto: shapes differ");
    std::vector<int> image(n + 1, 0);
    std::vector<bool> taken(n + 1, false);
    for (std::size_t i = 0; i < fb.size(); ++i) {
        if (fb[i].size() != tb[i].size()) throw std::invalid_argument("match_onto: shapes differ");
        for (std::size_t j = 0; j < fb[i].size(); ++j) {
            image[fb[i][j]] = tb[i][j];
            taken[tb[i][j]] = true;
        }
    }
    std::vector<int> free_targets;
    for (int x = 1; x <= n; ++x)
        if (!taken[x]) free_targets.push_back(x);
    std::size_t next = 0;
    for (int x = 1; x <= n; ++x)
        if (image[x] == 0) image[x] = free_targets[next++];
    Permutation sigma(std::vector<int>(image.begin() + 1, image.end()));
    if (from.relabel(sigma) != to) throw std::logic_error("match_onto: relabel check failed");
    return sigma;
}

GeneratorQuad make_quad(int n, const char* a, const char* b, const char* g, const char* d,
                        std::string prov) {
    GeneratorQuad q;
    q.n = n;
    q.alpha = parse_prt(a, n);
    q.beta = parse_prt(b, n);
    q.gamma = parse_prt(g, n);
    q.delta = parse_prt(d, n);
    q.provenance = std::move(prov);
    return q;
}

}  // namespace

const Partition& GeneratorQuad::member(int i) const {
    switch (i) {
        case 0: return alpha;
        case 1: return beta;
        case 2: return gamma;
        case 3: return delta;
        default: throw std::out_of_range("quad member index must be 0..3");
    }
}

bool GeneratorQuad::contains(const Partition& p) const {
    return p == alpha || p == beta || p == gamma || p == delta;
}

GeneratorQuad GeneratorQuad::relabeled(const Permutation& pi) const {
    if (pi.n() != n) throw std::invalid_argument("relabeled: permutation size mismatch");
    if (pi == Permutation::identity(n)) return *this;
    GeneratorQuad out = *this;
    out.alpha = alpha.relabel(pi);
    out.beta = beta.relabel(pi);
    out.gamma = gamma.relabel(pi);
    out.delta = delta.relabel(pi);
    std::string base;
    if (auto prev = split_relabel_suffix(provenance, &base))
        out.provenance = base + relabel_suffix(prev->then(pi));
    else
        out.provenance = provenance + relabel_suffix(pi);
    return out;
}

int Labeling::a(int i) const {
    if (i < 1 || i > k + 1) throw std::invalid_argument("a(i) needs 1 <= i <= k+1");
    return i;
}

int Labeling::b(int i) const {
    if (i < 1 || i > k + 1) throw std::invalid_argument("b(i) needs 1 <= i <= k+1");
    return i == k + 1 ? k + 1 : k + 1 + i;
}

GeneratorQuad atom_odd(int k) {
    if (k < 2) throw std::invalid_argument("atom_odd needs k >= 2");
    const Labeling L{k};
    const int n = 2 * k + 1;
    std::vector<std::vector<int>> beta_blocks, gamma_blocks;
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        beta_blocks.push_back({L.a(i), L.b(i + 1)});
        gamma_blocks.push_back({L.b(i), L.a(i + 1)});
        a_chain.push_back(L.a(i));
        b_chain.push_back(L.b(i));
    }
    GeneratorQuad q;
    q.n = n;
    q.alpha = Partition::atom(n, L.a(1), L.b(1));
    q.beta = Partition::from_blocks(n, beta_blocks);
    q.gamma = Partition::from_blocks(n, gamma_blocks);
    q.delta = Partition::from_blocks(n, {a_chain, b_chain});
    q.provenance = "oddat(k=" + std::to_string(k) + ")";
    return q;
}

GeneratorQuad atom_even(int k) {
    if (k < 3) throw std::invalid_argument("atom_even needs k >= 3");
    const Labeling L{k};
    const int n = 2 * k + 2;
    std::vector<std::vector<int>> beta_blocks = {{L.c(), L.a(1), L.b(2)}};
    std::vector<std::vector<int>> gamma_blocks = {{L.c(), L.b(1), L.a(2)}};
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        if (i >= 2) {
            beta_blocks.push_back({L.a(i), L.b(i + 1)});
            gamma_blocks.push_back({L.b(i), L.a(i + 1)});
        }
        a_chain.push_back(L.a(i));
        b_chain.push_back(L.b(i));
    }
    GeneratorQuad q;
    q.n = n;
    q.alpha = Partition::atom(n, L.a(1), L.b(1));
    q.beta = Partition::from_blocks(n, beta_blocks);
    q.gamma = Partition::from_blocks(n, gamma_blocks);
    q.delta = Partition::from_blocks(n, {a_chain, b_chain});
    q.provenance = "evenat(k=" + std::to_string(k) + ")";
    return q;
}

GeneratorQuad type3_even(int k) {
    if (k < 2) throw std::invalid_argument("type3_even needs k >= 2");
    const Labeling L{k};
    const int n = 2 * k + 2;
    std::vector<std::vector<int>> beta_blocks, gamma_blocks;
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        beta_blocks.push_back({L.a(i), L.b(i + 1)});
        gamma_blocks.push_back({L.b(i), L.a(i + 1)});
        a_chain.push_back(L.a(i));
        b_chain.push_back(L.b(i));
    }
    GeneratorQuad q;
    q.n = n;
    q.alpha = Partition::from_blocks(n, {{L.a(1), L.b(1), L.c()}});
    q.beta = Partition::from_blocks(n, beta_blocks);
    q.gamma = Partition::from_blocks(n, gamma_blocks);
    q.delta = Partition::from_blocks(n, {a_chain, b_chain, {L.c(), L.a(k + 1)}});
    q.provenance = "evenhtwo(k=" + std::to_string(k) + ")";
    return q;
}

GeneratorQuad type3_odd(int k) {
    if (k < 3) throw std::invalid_argument("type3_odd needs k >= 3");
    const Labeling L{k};
    const int n = 2 * k + 3;
    std::vector<std::vector<int>> beta_blocks = {{L.d(), L.a(1), L.b(2)}};
    std::vector<std::vector<int>> gamma_blocks = {{L.d(), L.b(1), L.a(2)}};
    std::vector<int> a_chain, b_chain;
    for (int i = 1; i <= k; ++i) {
        if (i >= 2) {
            beta_blocks.push_back({L.a(i), L.b(i + 1)});
            gamma_blocks.push_back({L.b(i), L.a(i + 1)});
        }
        a_chain.push_back(L.a(i));
        b_chain.push_back(L.b(i));
    }
    GeneratorQuad q;
    q.n = n;
    q.alpha = Partition::from_blocks(n, {{L.a(1), L.b(1), L.c()}});
    q.beta = Partition::from_blocks(n, beta_blocks);
    q.gamma = Partition::from_blocks(n, gamma_blocks);
    q.delta = Partition::from_blocks(n, {a_chain, b_chain, {L.c(), L.a(k + 1)}});
    q.provenance = "oddhtwo(k=" + std::to_string(k) + ")";
    return q;
}

std::string family_id(Family f) {
    switch (f) {
        case Family::OddAtom: return "oddat";
        case Family::EvenAtom: return "evenat";
        case Family::EvenType3: return "evenhtwo";
        case Family::OddType3: return "oddhtwo";
    }
    throw std::logic_error("unknown family");
}

std::optional<Family> family_from_id(const std::string& id) {
    if (id == "oddat") return Family::OddAtom;
    if (id == "evenat") return Family::EvenAtom;
    if (id == "evenhtwo") return Family::EvenType3;
    if (id == "oddhtwo") return Family::OddType3;
    return std::nullopt;
}

int family_min_k(Family f) {
    return (f == Family::OddAtom || f == Family::EvenType3) ? 2 : 3;
}

int family_n(Family f, int k) {
    switch (f) {
        case Family::OddAtom: return 2 * k + 1;
        case Family::EvenAtom:
        case Family::EvenType3: return 2 * k + 2;
        case Family::OddType3: return 2 * k + 3;
    }
    throw std::logic_error("unknown family");
}

GeneratorQuad family_quad(Family f, int k) {
    switch (f) {
        case Family::OddAtom: return atom_odd(k);
        case Family::EvenAtom: return atom_even(k);
        case Family::EvenType3: return type3_even(k);
        case Family::OddType3: return type3_odd(k);
    }
    throw std::logic_error("unknown family");
}

GeneratorQuad quad_n4_atoms() {
    return make_quad(4, "prt(12)", "prt(23)", "prt(34)", "prt(14)", "sporadic-n4-atoms");
}

GeneratorQuad quad_n4_mixed() {
    return make_quad(4, "prt(12;34)", "prt(23)", "prt(124)", "prt(134)", "sporadic-n4-mixed");
}

GeneratorQuad quad_n5_type3() {
    return make_quad(5, "prt(123)", "prt(35)", "prt(25;34)", "prt(145)", "sporadic-n5");
}

GeneratorQuad quad_n6_atom() {
    return make_quad(6, "prt(12)", "prt(25;34)", "prt(13;56)", "prt(24;36)", "sporadic-n6");
}

GeneratorQuad quad_n7_type3() {
    return make_quad(7, "prt(123)", "prt(147;56)", "prt(357;46)", "prt(15;26;34)", "sporadic-n7");
}

EligibilityReport eligible_system(const GeneratorQuad& quad, int u, int v) {
    const int n = quad.n;
    if (u < 1 || u > n || v < 1 || v > n || u == v)
        throw std::invalid_argument("eligible_system needs distinct u, v in [n]");
    EligibilityReport r;
    r.u = u;
    r.v = v;
    const Partition uv = Partition::atom(n, u, v);
    const Partition top = Partition::top(n);
    const Partition bottom = Partition::bottom(n);
    r.beta_join_gamma_is_top = join(quad.beta, quad.gamma) == top;
    r.beta_meet_gamma_is_bottom = meet(quad.beta, quad.gamma) == bottom;
    r.alpha_delta_uv_is_top = join(join(quad.alpha, quad.delta), uv) == top;
    r.alpha_split_is_bottom = meet(quad.alpha, join(quad.delta, uv)) == bottom;
    r.delta_split_is_bottom = meet(quad.delta, join(quad.alpha, uv)) == bottom;
    return r;
}

std::optional<GeneratorQuad> type22_search(int n, const Partition& alpha, std::uint64_t seed,
                                           int restarts, std::uint64_t candidate_budget) {
    if (n < 5) throw std::invalid_argument("type22_search needs n >= 5");
    if (alpha.n() != n) throw std::invalid_argument("type22_search: alpha has the wrong ground set");
    if (classify_height2(alpha) != Height2Type::TwoPlusTwo)
        throw std::invalid_argument("type22_search needs a partition with two two-element blocks");
    SplitMix64 rng(seed);
    const Partition top = Partition::top(n);
    const Partition bottom = Partition::bottom(n);
    const int max_blocks = (n + 1) / 2;

    // A random partition whose blocks are consecutive runs of a shuffled
    // sequence: between 2 and ceil(n/2) blocks, biased toward long chains.
    auto random_chain_like = [&]() {
        std::vector<int> elems(n);
        for (int i = 0; i < n; ++i) elems[i] = i + 1;
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(elems[i], elems[j]);
        }
        int nblocks = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_blocks - 1)));
        std::set<int> cuts;
        while (static_cast<int>(cuts.size()) < nblocks - 1)
            cuts.insert(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1))));
        std::vector<std::vector<int>> blocks;
        std::vector<int> cur;
        for (int i = 0; i < n; ++i) {
            cur.push_back(elems[i]);
            if (cuts.count(i + 1) && !cur.empty()) {
                blocks.push_back(cur);
                cur.clear();
            }
        }
        if (!cur.empty()) blocks.push_back(cur);
        return Partition::from_blocks(n, blocks);
    };

    for (int t = 0; t < restarts; ++t) {
        const Partition beta = random_chain_like();
        const Partition gamma = random_chain_like();
        const Partition delta = random_chain_like();
        if (beta == gamma || beta == delta || gamma == delta) continue;
        if (beta == alpha || gamma == alpha || delta == alpha) continue;
        if (meet(beta, gamma) != bottom) continue;
        if (join(beta, gamma) != top) continue;
        if (meet(meet(alpha, beta), meet(gamma, delta)) != bottom) continue;
        const auto report = generates({alpha, beta, gamma, delta}, n, candidate_budget);
        if (report.verdict == Verdict::Generates) {
            GeneratorQuad q;
            q.n = n;
            q.alpha = alpha;
            q.beta = beta;
            q.gamma = gamma;
            q.delta = delta;
            q.provenance = "search(seed=" + std::to_string(seed) + ")";
            return q;
        }
    }
    return std::nullopt;
}

namespace {

// Searching for a verified quad is the expensive fallback for the 2+2 shape
// at n >= 7; the result only depends on n, so cache it.
GeneratorQuad type22_quad_cached(int n) {
    static std::mutex mu;
    static std::map<int, GeneratorQuad> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    const Partition canon =
        Partition::from_blocks(n, {{1, 2}, {3, 4}});
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        if (auto got = type22_search(n, canon, seed, 20000)) {
            cache.emplace(n, *got);
            return *got;
        }
    }
    throw std::runtime_error("no verified generating quad found for the 2+2 shape at n = " +
                             std::to_string(n));
}

}  // namespace

GeneratorQuad build_for(const Partition& alpha) {
    const int n = alpha.n();
    if (n < 4) throw std::invalid_argument("build_for needs n >= 4");
    const auto [shape, pi] = normalize_target(alpha);
    (void)pi;
    GeneratorQuad base;
    switch (shape) {
        case TargetShape::Atom:
            if (n == 4)
                base = quad_n4_atoms();
            else if (n == 6)
                base = quad_n6_atom();
            else if (n % 2 == 1)
                base = atom_odd((n - 1) / 2);
            else
                base = atom_even((n - 2) / 2);
            break;
        case TargetShape::Three:
            if (n == 4) {
                base = quad_n4_mixed();
                base.target_index = 2;
            } else if (n == 5)
                base = quad_n5_type3();
            else if (n == 7)
                base = quad_n7_type3();
            else if (n % 2 == 0)
                base = type3_even((n - 2) / 2);
            else
                base = type3_odd((n - 3) / 2);
            break;
        case TargetShape::TwoPlusTwo:
            if (n == 4)
                base = quad_n4_mixed();
            else if (n == 5) {
                base = quad_n5_type3();
                base.target_index = 2;
            } else if (n == 6) {
                base = quad_n6_atom();
                base.target_index = 1;
            } else
                base = type22_quad_cached(n);
            break;
    }
    return base.relabeled(match_onto(base.target(), alpha));
}

std::string provenance_base(const std::string& provenance) {
    std::string base;
    split_relabel_suffix(provenance, &base);
    return base;
}

std::optional<Permutation> provenance_relabel(const std::string& provenance) {
    std::string base;
    return split_relabel_suffix(provenance, &base);
}

ExtensionReport extension_search(const GeneratorQuad& quad, int m, ExtensionMode mode,
                                 std::uint64_t budget) {
    if (m < 0) throw std::invalid_argument("extension_search needs m >= 0");
    const int n2 = quad.n + m;
    ExtensionReport rep;
    rep.base_n = quad.n;
    rep.m = m;
    rep.mode = mode;
    rep.formula_even_m = (m >= 2 && m % 2 == 0);
    if (m >= 1) {
        double fact = 1.0;
        for (int i = 2; i < m; ++i) fact *= i;
        rep.formula_value = std::pow(2.0, m - 3) * fact / (3.0 * m + 3.0);
    }

    const auto ea = enumerate_extensions(quad.alpha, m);
    const auto eb = enumerate_extensions(quad.beta, m);
    const auto eg = enumerate_extensions(quad.gamma, m);
    const auto ed = enumerate_extensions(quad.delta, m);
    rep.candidates_total = static_cast<std::uint64_t>(ea.size()) * eb.size() * eg.size() * ed.size();

    const Partition top = Partition::top(n2);
    const Partition bottom = Partition::bottom(n2);
    bool out_of_budget = false;
    for (const auto& a2 : ea) {
        for (const auto& b2 : eb) {
            const Partition mab = meet(a2, b2);
            const Partition jab = join(a2, b2);
            for (const auto& g2 : eg) {
                const Partition mabg = meet(mab, g2);
                const Partition jabg = join(jab, g2);
                for (const auto& d2 : ed) {
                    if (meet(mabg, d2) != bottom || join(jabg, d2) != top) {
                        ++rep.pruned;
                        continue;
                    }
                    if (rep.pair_ops_spent >= budget) {
                        out_of_budget = true;
                        goto done;
                    }
                    const auto r =
                        generates({a2, b2, g2, d2}, n2, budget - rep.pair_ops_spent);
                    rep.pair_ops_spent += r.pair_ops;
                    ++rep.candidates_checked;
                    if (r.verdict == Verdict::Generates) {
                        ++rep.generating_count;
                        if (!rep.witness) {
                            GeneratorQuad w;
                            w.n = n2;
                            w.alpha = a2;
                            w.beta = b2;
                            w.gamma = g2;
                            w.delta = d2;
                            w.provenance =
                                "extension(of=" + quad.provenance + ",m=" + std::to_string(m) + ")";
                            w.target_index = quad.target_index;
                            rep.witness = std::move(w);
                        }
                        if (mode == ExtensionMode::FindOne) goto done;
                    } else if (r.verdict == Verdict::Unknown) {
                        out_of_budget = true;
                        goto done;
                    }
                }
            }
        }
    }
done:
    rep.complete = !out_of_budget;
    return rep;
}

}  // namespace partlat
