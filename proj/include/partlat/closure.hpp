// Sublattice closure of a finite set of partitions, generation checks with a
// sound atom-based early exit, and desk-scale enumeration of Part(n).

#pragma once

#include <cstdint>
#include <vector>

#include "partlat/partition.hpp"

namespace partlat {

enum class Verdict { Generates, NotGenerates, Unknown };
enum class Ternary { False, True, Unknown };

inline constexpr std::uint64_t kDefaultPairBudget = 100'000'000;

struct ClosureReport {
    Verdict verdict = Verdict::Unknown;
    std::size_t closure_size = 0;  // meaningful when the closure completed
    int atoms_found = 0;
    std::uint64_t pair_ops = 0;  // unordered pairs expanded (one meet + one join each)
    bool budget_hit = false;
    bool pair_ops_exact = true;  // exact for every worker count in this engine
};

struct ClosureResult {
    std::vector<Partition> set;  // insertion order, deterministic
    ClosureReport report;
};

// Least set containing phi (nonempty) and closed under binary meet and join.
// Every unordered pair is expanded exactly once; newly found elements are
// appended and paired later.  Pairs are consumed in fixed-size batches whose
// composition does not depend on jobs: workers only split the meet/join
// arithmetic of a batch, so the result set, its insertion order, and the
// pair count are identical for every jobs value.
ClosureResult closure(const std::vector<Partition>& phi,
                      std::uint64_t budget = kDefaultPairBudget, int jobs = 1);

// Generation check for Part(n).  Returns Generates as soon as all n(n-1)/2
// atoms have appeared (every partition is a join of atoms, so a closed set
// containing all atoms is all of Part(n)); NotGenerates only after the
// closure completed with some atom missing; Unknown only on budget
// exhaustion.
ClosureReport generates(const std::vector<Partition>& phi, int n,
                        std::uint64_t budget = kDefaultPairBudget, int jobs = 1);

// Membership via closure, stopping at the first hit.
Ternary member_of_closure(const Partition& p, const std::vector<Partition>& phi,
                          std::uint64_t budget = kDefaultPairBudget);

// All partitions of [n] in restricted-growth-string order; count = Bell(n).
std::vector<Partition> enumerate_all_partitions(int n, int cap = 10);

// Bell numbers in 64 bits (n <= 25).
std::uint64_t bell_number(int n);

const char* verdict_name(Verdict v);

}  // namespace partlat
