// Four-element generating sets of Part(n) with one designated target member
// of height 1 or 2: the parameterized ladder families, the small hard-coded
// quads, a dispatcher from an arbitrary target, the eligibility check on
// (beta, gamma, alpha, delta; u, v), and extension search over a larger
// ground set.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partlat/closure.hpp"
#include "partlat/partition.hpp"

namespace partlat {

struct GeneratorQuad {
    int n = 0;
    Partition alpha, beta, gamma, delta;
    std::string provenance;
    int target_index = 0;  // 0..3 = alpha..delta, the designated target

    const Partition& member(int i) const;
    const Partition& target() const { return member(target_index); }
    std::array<Partition, 4> members() const { return {alpha, beta, gamma, delta}; }
    std::vector<Partition> member_list() const { return {alpha, beta, gamma, delta}; }
    bool contains(const Partition& p) const;

    // Applies the automorphism induced by pi to all four members and records
    // the permutation in the provenance (so scripts can be rebuilt).
    GeneratorQuad relabeled(const Permutation& pi) const;

    bool operator==(const GeneratorQuad&) const = default;
};

// Ground-set labelling shared by the parameterized families:
// a_i = i (i in [k+1]), b_i = k+1+i (i in [k]), b_{k+1} = a_{k+1} = k+1,
// c = 2k+2, d = 2k+3.
struct Labeling {
    int k;
    int a(int i) const;
    int b(int i) const;
    int c() const { return 2 * k + 2; }
    int d() const { return 2 * k + 3; }
};

// The four parameterized families.  Ranges: atom_odd k >= 2 (n = 2k+1),
// atom_even k >= 3 (n = 2k+2), type3_even k >= 2 (n = 2k+2),
// type3_odd k >= 3 (n = 2k+3).  The target is alpha in each.
GeneratorQuad atom_odd(int k);
GeneratorQuad atom_even(int k);
GeneratorQuad type3_even(int k);
GeneratorQuad type3_odd(int k);

enum class Family { OddAtom, EvenAtom, EvenType3, OddType3 };

std::string family_id(Family f);  // "oddat", "evenat", "evenhtwo", "oddhtwo"
std::optional<Family> family_from_id(const std::string& id);
int family_min_k(Family f);
int family_n(Family f, int k);
GeneratorQuad family_quad(Family f, int k);

// Hard-coded quads for the small ground sets.
GeneratorQuad quad_n4_atoms();   // {prt(12), prt(23), prt(34), prt(14)}
GeneratorQuad quad_n4_mixed();   // {prt(12;34), prt(23), prt(124), prt(134)}
GeneratorQuad quad_n5_type3();   // alpha = prt(123)
GeneratorQuad quad_n6_atom();    // alpha = prt(12)
GeneratorQuad quad_n7_type3();   // alpha = prt(123)

// A generating quad that contains alpha itself (height 1 or 2, n >= 4).
// Picks the construction for alpha's shape and n, then relabels it onto
// alpha.  Type 2+2 at n >= 7 falls back to a seeded verified search whose
// result is cached per n.
GeneratorQuad build_for(const Partition& alpha);

// Provenance strings have the form "<base>" or "<base>+relabel[i1,...,in]".
std::string provenance_base(const std::string& provenance);
std::optional<Permutation> provenance_relabel(const std::string& provenance);

// Randomized search for a verified generating quad containing the given
// type-2+2 partition.  Samples chain-like partitions, gates them with cheap
// necessary equations, and accepts only closure-verified candidates.
// Deterministic for a fixed (seed, restarts) pair.
std::optional<GeneratorQuad> type22_search(int n, const Partition& alpha, std::uint64_t seed,
                                           int restarts,
                                           std::uint64_t candidate_budget = 4'000'000);

struct EligibilityReport {
    bool beta_join_gamma_is_top = false;    // beta | gamma = top
    bool beta_meet_gamma_is_bottom = false; // beta & gamma = bottom
    bool alpha_delta_uv_is_top = false;     // alpha | delta | prt(u v) = top
    bool alpha_split_is_bottom = false;     // alpha & (delta | prt(u v)) = bottom
    bool delta_split_is_bottom = false;     // delta & (alpha | prt(u v)) = bottom
    int u = 0, v = 0;
    bool eligible() const {
        return beta_join_gamma_is_top && beta_meet_gamma_is_bottom && alpha_delta_uv_is_top &&
               alpha_split_is_bottom && delta_split_is_bottom;
    }
};

EligibilityReport eligible_system(const GeneratorQuad& quad, int u, int v);

enum class ExtensionMode { FindOne, CountAll };

struct ExtensionReport {
    int base_n = 0;
    int m = 0;
    ExtensionMode mode = ExtensionMode::FindOne;
    std::uint64_t candidates_total = 0;
    std::uint64_t candidates_checked = 0;  // candidates that reached a closure run
    std::uint64_t pruned = 0;              // rejected by the bottom/top preconditions
    std::uint64_t generating_count = 0;
    std::optional<GeneratorQuad> witness;  // first generating candidate, either mode
    double formula_value = 0.0;            // 2^(m-3) (m-1)! / (3m+3), display only
    bool formula_even_m = false;
    bool complete = false;  // false when the pair-op budget ran out
    std::uint64_t pair_ops_spent = 0;
};

// Walks every componentwise extension of the quad to [n+m] in a fixed
// mixed-radix order (alpha outermost, delta innermost), prunes candidates
// whose four-way meet is not bottom or whose join is not top, and verifies
// the rest by closure with the atom early exit.  The budget caps the total
// pair operations spent across all closure runs.
ExtensionReport extension_search(const GeneratorQuad& quad, int m, ExtensionMode mode,
                                 std::uint64_t budget = kDefaultPairBudget);

}  // namespace partlat
