// Canonical set partitions of [n] = {1,...,n} with the lattice operations.
//
// A partition is stored as a leader array: leader[x] is the smallest element
// of the block containing x.  This form is unique per equivalence relation,
// so equality and hashing are plain array comparisons.  Elements are 1-based
// in the whole public interface; the array is kept 0-based internally.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace partlat {

class Permutation;

enum class Height2Type { TwoPlusTwo, Three, NotHeight2 };

class Partition {
public:
    Partition() = default;  // partition of the empty set

    static Partition bottom(int n);
    static Partition top(int n);
    // The atom prt(x y): one two-element block {x, y}, the rest singletons.
    static Partition atom(int n, int x, int y);
    // Blocks of size >= 2; elements not listed become singletons.
    static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks);

    int n() const { return static_cast<int>(leader_.size()); }
    // The canonical form itself, 0-based: entry i is the smallest 0-based
    // index in the block of element i+1.
    const std::vector<std::uint16_t>& leader_array() const { return leader_; }
    int leader_of(int x) const;
    bool same_block(int x, int y) const;
    int block_count() const;
    int height() const { return n() - block_count(); }
    bool is_atom() const { return height() == 1; }

    // All blocks, each sorted, ordered by smallest element.
    std::vector<std::vector<int>> blocks() const;
    std::vector<std::vector<int>> nonsingleton_blocks() const;

    // Restriction to [m]; blocks are intersected with {1,...,m}.
    Partition restricted(int m) const;
    // Image under the lattice automorphism induced by pi.
    Partition relabel(const Permutation& pi) const;

    std::size_t hash() const;

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

private:
    explicit Partition(std::vector<std::uint16_t> leader) : leader_(std::move(leader)) {}
    std::vector<std::uint16_t> leader_;

    // Canonicalizes an arbitrary labelling (equal label = same block).
    static Partition from_labels(const std::vector<std::uint16_t>& labels);

    friend Partition meet(const Partition& p, const Partition& q);
    friend Partition join(const Partition& p, const Partition& q);
    friend bool leq(const Partition& p, const Partition& q);
};

Partition meet(const Partition& p, const Partition& q);
Partition join(const Partition& p, const Partition& q);
// True iff every block of p is contained in a block of q.
bool leq(const Partition& p, const Partition& q);

// Text form, e.g. prt(15;23) or prt({1,5};{2,3}); prt() is the bottom.
// Within a block the elements are strictly increasing, blocks are ordered by
// first element, and the digit form is only valid when n <= 9.  The ground
// set size is not part of the text; it is supplied by the caller.
Partition parse_prt(const std::string& text, int n);
std::string format_prt(const Partition& p);

Height2Type classify_height2(const Partition& p);

// Every atom of Part(n), pairs in lexicographic order: (1,2), (1,3), ...
std::vector<Partition> all_atoms(int n);

// True iff q restricted to p.n() equals p.
bool is_extension(const Partition& q, const Partition& p);

// All partitions of [p.n() + m] whose restriction to [p.n()] is p.
// Order: new elements are placed one by one in increasing order; for each,
// the choices are the existing blocks by leader, then a fresh singleton.
std::vector<Partition> enumerate_extensions(const Partition& p, int m);

struct PartitionHash {
    std::size_t operator()(const Partition& p) const { return p.hash(); }
};

// Bijection on [n]; image(x) is the value at x.
class Permutation {
public:
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int n);

    int n() const { return static_cast<int>(image_.size()); }
    int apply(int x) const;
    Permutation inverse() const;
    // (a.then(b))(x) = b(a(x)).
    Permutation then(const Permutation& b) const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> image_;
};

enum class TargetShape { Atom, TwoPlusTwo, Three };

// A permutation pi with relabel(alpha, pi) equal to the canonical element of
// alpha's shape: prt(12), prt(12;34), or prt(123).  Requires height 1 or 2.
std::pair<TargetShape, Permutation> normalize_target(const Partition& alpha);

std::string shape_name(TargetShape s);

}  // namespace partlat
