// Test-side reference implementations, kept deliberately independent of the
// library's algorithms: lattice operations via boolean relation matrices with
// Warshall closure, Bell numbers via the binomial-sum recurrence, and seeded
// random partitions / subsets for property tests.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "partlat/partition.hpp"
#include "partlat/term.hpp"

namespace oracles {

using partlat::Partition;

using BoolMat = std::vector<std::vector<bool>>;

inline BoolMat relation_of(const Partition& p) {
    const int n = p.n();
    BoolMat m(n, std::vector<bool>(n, false));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m[i - 1][j - 1] = p.same_block(i, j);
    return m;
}

inline Partition partition_of(const BoolMat& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<int>> blocks;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> block;
        for (int j = i; j < n; ++j)
            if (m[i][j]) {
                block.push_back(j + 1);
                seen[j] = true;
            }
        blocks.push_back(block);
    }
    return Partition::from_blocks(n, blocks);
}

// Meet of equivalence relations is their intersection.
inline Partition meet(const Partition& p, const Partition& q) {
    BoolMat a = relation_of(p), b = relation_of(q);
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = a[i][j] && b[i][j];
    return partition_of(a);
}

// Join is the transitive closure (Warshall) of the union.
inline Partition join(const Partition& p, const Partition& q) {
    BoolMat a = relation_of(p), b = relation_of(q);
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = a[i][j] || b[i][j];
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = a[i][j] || (a[i][k] && a[k][j]);
    return partition_of(a);
}

inline bool leq(const Partition& p, const Partition& q) {
    const int n = p.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (p.same_block(i, j) && !q.same_block(i, j)) return false;
    return true;
}

// B(m+1) = sum_k C(m, k) B(k); the library uses the Bell triangle instead.
inline std::uint64_t bell(int n) {
    if (n < 0 || n > 25) throw std::invalid_argument("bell oracle range");
    std::vector<std::uint64_t> b{1};
    for (int m = 0; static_cast<int>(b.size()) <= n; ++m) {
        std::vector<std::uint64_t> binom(m + 1, 1);
        for (int i = 1; i <= m; ++i)
            for (int j = i - 1; j > 0; --j) binom[j] += binom[j - 1];
        std::uint64_t next = 0;
        for (int k = 0; k <= m; ++k) next += binom[k] * b[k];
        b.push_back(next);
    }
    return b[n];
}

// Uniform-ish random partition: element x joins one of the existing blocks
// or opens a new one, chosen by one draw each.
inline Partition random_partition(int n, partlat::SplitMix64& rng) {
    std::vector<std::uint16_t> label(n);
    std::uint16_t blocks = 0;
    for (int x = 0; x < n; ++x) {
        const auto pick = static_cast<std::uint16_t>(rng.below(blocks + 1));
        label[x] = pick;
        if (pick == blocks) ++blocks;
    }
    std::vector<std::vector<int>> by_label(blocks);
    for (int x = 0; x < n; ++x) by_label[label[x]].push_back(x + 1);
    return Partition::from_blocks(n, by_label);
}

// count distinct indices into pool, by repeated rejection.
inline std::vector<Partition> random_subset(const std::vector<Partition>& pool, int count,
                                            partlat::SplitMix64& rng) {
    std::vector<bool> used(pool.size(), false);
    std::vector<Partition> out;
    while (static_cast<int>(out.size()) < count) {
        const auto i = static_cast<std::size_t>(rng.below(pool.size()));
        if (used[i]) continue;
        used[i] = true;
        out.push_back(pool[i]);
    }
    return out;
}

}  // namespace oracles
