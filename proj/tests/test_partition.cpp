#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "partlat/closure.hpp"
#include "partlat/partition.hpp"

using namespace partlat;

TEST_CASE("constructors and canonical form") {
    Partition bot = Partition::bottom(5);
    CHECK(bot.n() == 5);
    CHECK(bot.block_count() == 5);
    CHECK(bot.height() == 0);

    Partition top = Partition::top(5);
    CHECK(top.block_count() == 1);
    CHECK(top.height() == 4);

    Partition a = Partition::atom(5, 4, 2);
    CHECK(a.is_atom());
    CHECK(a.same_block(2, 4));
    CHECK(!a.same_block(1, 2));
    CHECK(a == Partition::atom(5, 2, 4));

    Partition p = Partition::from_blocks(6, {{3, 1}, {5, 2}});
    CHECK(p.leader_of(3) == 1);
    CHECK(p.leader_of(5) == 2);
    CHECK(p.leader_of(6) == 6);
    CHECK(p.blocks() == std::vector<std::vector<int>>{{1, 3}, {2, 5}, {4}, {6}});
    CHECK(p.nonsingleton_blocks() == std::vector<std::vector<int>>{{1, 3}, {2, 5}});

    CHECK_THROWS_AS(Partition::bottom(0), std::invalid_argument);
    CHECK_THROWS_AS(Partition::atom(4, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Partition::atom(4, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks(4, {{1, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks(4, {{1, 2}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("prt text both ways") {
    CHECK(format_prt(Partition::bottom(4)) == "prt()");
    CHECK(parse_prt("prt()", 4) == Partition::bottom(4));
    CHECK(parse_prt("prt(12;34)", 4) == Partition::from_blocks(4, {{1, 2}, {3, 4}}));
    CHECK(parse_prt("prt({1,2};{3,4})", 4) == parse_prt("prt(12;34)", 4));
    CHECK(parse_prt("prt({2,11})", 12) == Partition::atom(12, 2, 11));
    CHECK(format_prt(Partition::atom(12, 2, 11)) == "prt({2,11})");
    CHECK(format_prt(parse_prt("prt({1};{2,3})", 3)) == "prt(23)");

    // digit form bound, ordering rules, junk
    CHECK_THROWS_AS(parse_prt("prt(12)", 10), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt(21)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt(34;12)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt({3,3})", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt(12", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt(12)x", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt(05)", 5), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("prt(16)", 5), std::invalid_argument);
    CHECK_THROWS_AS(parse_prt("set(12)", 4), std::invalid_argument);

    // canonical round trip over every partition of [5]
    for (const Partition& p : enumerate_all_partitions(5)) {
        CHECK(parse_prt(format_prt(p), 5) == p);
    }
    // and a larger ground set through the braces form
    SplitMix64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Partition p = oracles::random_partition(14, rng);
        CHECK(parse_prt(format_prt(p), 14) == p);
    }
}

TEST_CASE("meet join leq against the relation-matrix oracle") {
    const auto part4 = enumerate_all_partitions(4);
    for (const Partition& p : part4)
        for (const Partition& q : part4) {
            CHECK(meet(p, q) == oracles::meet(p, q));
            CHECK(join(p, q) == oracles::join(p, q));
            CHECK(leq(p, q) == oracles::leq(p, q));
        }
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Partition p = oracles::random_partition(9, rng);
        Partition q = oracles::random_partition(9, rng);
        CHECK(meet(p, q) == oracles::meet(p, q));
        CHECK(join(p, q) == oracles::join(p, q));
        CHECK(leq(p, q) == oracles::leq(p, q));
    }
}

TEST_CASE("lattice laws") {
    SplitMix64 rng(13);
    for (int i = 0; i < 100; ++i) {
        Partition p = oracles::random_partition(7, rng);
        Partition q = oracles::random_partition(7, rng);
        Partition r = oracles::random_partition(7, rng);
        CHECK(meet(p, q) == meet(q, p));
        CHECK(join(p, q) == join(q, p));
        CHECK(meet(p, meet(q, r)) == meet(meet(p, q), r));
        CHECK(join(p, join(q, r)) == join(join(p, q), r));
        CHECK(meet(p, join(p, q)) == p);
        CHECK(join(p, meet(p, q)) == p);
        CHECK(meet(p, p) == p);
        CHECK(join(p, p) == p);
        // leq is the order induced by either operation
        CHECK(leq(p, q) == (meet(p, q) == p));
        CHECK(leq(p, q) == (join(p, q) == q));
        CHECK(leq(Partition::bottom(7), p));
        CHECK(leq(p, Partition::top(7)));
    }
}

TEST_CASE("height and the two height-2 shapes") {
    const auto part5 = enumerate_all_partitions(5);
    for (const Partition& p : part5) {
        CHECK(p.height() == 5 - p.block_count());
        int pairs = 0, triples = 0, bigger = 0;
        for (const auto& b : p.nonsingleton_blocks()) {
            if (b.size() == 2) ++pairs;
            else if (b.size() == 3) ++triples;
            else ++bigger;
        }
        Height2Type t = classify_height2(p);
        if (p.height() != 2) CHECK(t == Height2Type::NotHeight2);
        else if (pairs == 2 && triples == 0 && bigger == 0) CHECK(t == Height2Type::TwoPlusTwo);
        else CHECK((t == Height2Type::Three && triples == 1 && pairs == 0 && bigger == 0));
        CHECK(p.is_atom() == (p.height() == 1));
    }
}

TEST_CASE("all_atoms") {
    auto atoms = all_atoms(6);
    CHECK(atoms.size() == 15);
    CHECK(atoms.front() == Partition::atom(6, 1, 2));
    CHECK(atoms.back() == Partition::atom(6, 5, 6));
    for (const Partition& a : atoms) CHECK(a.is_atom());
    CHECK(std::set<Partition>(atoms.begin(), atoms.end()).size() == 15);
}

TEST_CASE("restriction and extensions") {
    Partition p = parse_prt("prt(125;36)", 6);
    CHECK(p.restricted(4) == parse_prt("prt(12;3)", 4));
    CHECK(p.restricted(6) == p);
    CHECK(is_extension(p, parse_prt("prt(12)", 4)));
    CHECK(!is_extension(p, parse_prt("prt(13)", 4)));

    for (const Partition& base : enumerate_all_partitions(4)) {
        auto exts = enumerate_extensions(base, 2);
        // against brute force over Part(6)
        std::size_t expect = 0;
        for (const Partition& q : enumerate_all_partitions(6))
            if (q.restricted(4) == base) ++expect;
        CHECK(exts.size() == expect);
        std::set<Partition> dedup(exts.begin(), exts.end());
        CHECK(dedup.size() == exts.size());
        for (const Partition& q : exts) {
            CHECK(q.n() == 6);
            CHECK(is_extension(q, base));
        }
    }
}

TEST_CASE("permutations and relabeling") {
    CHECK_THROWS_AS(Permutation({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 1, 2}), std::invalid_argument);
    Permutation pi({2, 3, 1, 4});
    CHECK(pi.apply(1) == 2);
    CHECK(pi.inverse().apply(2) == 1);
    CHECK(pi.then(pi.inverse()) == Permutation::identity(4));

    SplitMix64 rng(17);
    for (int i = 0; i < 100; ++i) {
        Partition p = oracles::random_partition(6, rng);
        Partition q = oracles::random_partition(6, rng);
        std::vector<int> img{1, 2, 3, 4, 5, 6};
        for (int j = 5; j > 0; --j) std::swap(img[j], img[rng.below(j + 1)]);
        Permutation perm(img);
        // automorphism: relabeling commutes with both operations
        CHECK(meet(p, q).relabel(perm) == meet(p.relabel(perm), q.relabel(perm)));
        CHECK(join(p, q).relabel(perm) == join(p.relabel(perm), q.relabel(perm)));
        CHECK(leq(p, q) == leq(p.relabel(perm), q.relabel(perm)));
        CHECK(p.relabel(perm).relabel(perm.inverse()) == p);
    }
}

TEST_CASE("normalize_target maps onto the canonical shapes") {
    auto check_one = [](const std::string& text, int n, TargetShape want,
                        const std::string& canon) {
        Partition alpha = parse_prt(text, n);
        auto [shape, pi] = normalize_target(alpha);
        CHECK(shape == want);
        CHECK(alpha.relabel(pi) == parse_prt(canon, n));
    };
    check_one("prt(35)", 6, TargetShape::Atom, "prt(12)");
    check_one("prt(16;25)", 6, TargetShape::TwoPlusTwo, "prt(12;34)");
    check_one("prt(256)", 6, TargetShape::Three, "prt(123)");
    CHECK(shape_name(TargetShape::Atom) == "atom");
    CHECK(shape_name(TargetShape::TwoPlusTwo) == "two2");
    CHECK(shape_name(TargetShape::Three) == "three");
    CHECK_THROWS_AS(normalize_target(Partition::bottom(5)), std::invalid_argument);
    CHECK_THROWS_AS(normalize_target(Partition::top(5)), std::invalid_argument);
    // every height-<=2 element of Part(6), via the library's own enumeration
    for (const Partition& p : enumerate_all_partitions(6)) {
        if (p.height() < 1 || p.height() > 2) continue;
        auto [shape, pi] = normalize_target(p);
        Partition canon = p.relabel(pi);
        if (p.height() == 1) CHECK(canon == parse_prt("prt(12)", 6));
        else if (shape == TargetShape::TwoPlusTwo) CHECK(canon == parse_prt("prt(12;34)", 6));
        else CHECK(canon == parse_prt("prt(123)", 6));
    }
}

TEST_CASE("hashing is consistent with equality") {
    const auto part5 = enumerate_all_partitions(5);
    std::set<std::size_t> hashes;
    for (const Partition& p : part5) {
        Partition copy = Partition::from_blocks(5, p.nonsingleton_blocks());
        CHECK(copy == p);
        CHECK(copy.hash() == p.hash());
        hashes.insert(p.hash());
    }
    // not a contract, but a collapse would make the closure engine quadratic
    CHECK(hashes.size() > 40);
}
