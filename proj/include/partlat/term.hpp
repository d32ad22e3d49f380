// Lattice terms over k variables, their text form, and evaluation.
//
// Grammar of the text form: variables are x1..xk, `&` is meet, `|` is join,
// `&` binds tighter than `|`, both are left-associative, parentheses group.
// The printer emits the minimal parentheses that reproduce the tree shape.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "partlat/partition.hpp"

namespace partlat {

class LatticeTerm {
public:
    enum class Kind { Variable, Meet, Join };

    static LatticeTerm variable(int index, int arity);
    static LatticeTerm meet(const LatticeTerm& l, const LatticeTerm& r);
    static LatticeTerm join(const LatticeTerm& l, const LatticeTerm& r);

    Kind kind() const { return node_->kind; }
    int arity() const { return arity_; }
    int var_index() const;
    LatticeTerm left() const;
    LatticeTerm right() const;
    int depth() const;
    int node_count() const;

    bool operator==(const LatticeTerm& other) const;

private:
    struct Node {
        Kind kind;
        int var = 0;
        std::shared_ptr<const Node> l, r;
    };
    LatticeTerm(std::shared_ptr<const Node> node, int arity)
        : node_(std::move(node)), arity_(arity) {}
    static LatticeTerm combine(Kind kind, const LatticeTerm& l, const LatticeTerm& r);

    std::shared_ptr<const Node> node_;
    int arity_;

    friend Partition eval(const LatticeTerm& t, const std::vector<Partition>& tuple);
    friend std::string format_term(const LatticeTerm& t);
};

struct TermVector {
    int k = 0;
    std::vector<LatticeTerm> terms;
};

LatticeTerm parse_term(const std::string& text, int k);
std::string format_term(const LatticeTerm& t);

Partition eval(const LatticeTerm& t, const std::vector<Partition>& tuple);

// SplitMix64: the fixed pseudo random stream behind every seeded feature,
// so fixtures are reproducible across implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97f4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform-enough value in [0, bound) by remainder; bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

// Deterministic term sampling.  One SplitMix64 stream seeded with `seed` is
// consumed left to right, term by term.  At each node with more than one
// level of depth left: one draw decides leaf (probability 1/3); for a leaf
// one draw picks the variable; otherwise one draw picks meet or join and the
// two children are generated left first.
TermVector random_terms(int k, int count, int max_depth, std::uint64_t seed);

// Newline-joined canonical texts of the evaluations, as raw bytes.
// Deliberately no hashing: this is key material for a demo, not a KDF.
std::string derive_session_key(const TermVector& tv, const std::vector<Partition>& tuple);

}  // namespace partlat
