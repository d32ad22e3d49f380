#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "partlat/closure.hpp"
#include "partlat/partition.hpp"
#include "partlat/term.hpp"

using namespace partlat;

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 a(0);
    CHECK(a.next() == 0xE220A8397B1DCDAFULL);
    CHECK(a.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(a.next() == 0x06C45D188009454FULL);
    SplitMix64 b(42);
    CHECK(b.next() == 0xBDD732262FEB6E95ULL);
    CHECK(b.next() == 0x28EFE333B266F103ULL);
    SplitMix64 c(7);
    CHECK(c.below(10) < 10);
}

TEST_CASE("variables are 1-based and bounded") {
    CHECK_THROWS_AS(LatticeTerm::variable(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(LatticeTerm::variable(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(LatticeTerm::variable(1, 0), std::invalid_argument);
    LatticeTerm v = LatticeTerm::variable(3, 3);
    CHECK(v.kind() == LatticeTerm::Kind::Variable);
    CHECK(v.var_index() == 3);
    CHECK(v.arity() == 3);
    CHECK(v.depth() == 1);
    CHECK(v.node_count() == 1);
    CHECK_THROWS_AS(v.left(), std::logic_error);

    LatticeTerm w = LatticeTerm::variable(1, 2);
    CHECK_THROWS_AS(LatticeTerm::meet(v, w), std::invalid_argument);
    LatticeTerm m = LatticeTerm::meet(v, LatticeTerm::variable(1, 3));
    CHECK(m.depth() == 2);
    CHECK(m.node_count() == 3);
    CHECK_THROWS_AS(m.var_index(), std::logic_error);
    CHECK(m.left() == v);
}

TEST_CASE("parse and print fixed forms") {
    // meet binds tighter, both left-associative, minimal parentheses
    auto roundtrip = [](const std::string& in, const std::string& out) {
        CHECK(format_term(parse_term(in, 4)) == out);
    };
    roundtrip("x1", "x1");
    roundtrip("x1 & x2 | x3", "x1 & x2 | x3");
    roundtrip("(x1 & x2) | x3", "x1 & x2 | x3");
    roundtrip("x1 & (x2 | x3)", "x1 & (x2 | x3)");
    roundtrip("x1 | x2 | x3", "x1 | x2 | x3");
    roundtrip("x1 | (x2 | x3)", "x1 | (x2 | x3)");
    roundtrip("((x1)) & x4", "x1 & x4");
    roundtrip("x1&x2|x3&x4", "x1 & x2 | x3 & x4");
    roundtrip("x2 & (x3 & x4)", "x2 & (x3 & x4)");

    CHECK(parse_term("x1|x2&x3", 3) ==
          LatticeTerm::join(LatticeTerm::variable(1, 3),
                            LatticeTerm::meet(LatticeTerm::variable(2, 3),
                                              LatticeTerm::variable(3, 3))));

    CHECK_THROWS_AS(parse_term("x0", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("x4", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("x1 &", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("(x1 | x2", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("x1 x2", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("y1", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("", 3), std::invalid_argument);
}

TEST_CASE("round trip over random terms") {
    TermVector tv = random_terms(5, 1000, 7, 20240229);
    CHECK(tv.k == 5);
    CHECK(tv.terms.size() == 1000);
    for (const LatticeTerm& t : tv.terms) {
        std::string text = format_term(t);
        LatticeTerm back = parse_term(text, 5);
        CHECK(back == t);
        CHECK(format_term(back) == text);
        CHECK(t.depth() <= 7);
    }
}

TEST_CASE("random term stream is seed-determined") {
    TermVector a = random_terms(3, 20, 5, 99);
    TermVector b = random_terms(3, 20, 5, 99);
    TermVector c = random_terms(3, 20, 5, 100);
    REQUIRE(a.terms.size() == b.terms.size());
    for (std::size_t i = 0; i < a.terms.size(); ++i) CHECK(a.terms[i] == b.terms[i]);
    bool all_same = c.terms.size() == a.terms.size();
    for (std::size_t i = 0; all_same && i < a.terms.size(); ++i)
        all_same = a.terms[i] == c.terms[i];
    CHECK(!all_same);
    CHECK_THROWS_AS(random_terms(0, 5, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_terms(3, 0, 5, 1), std::invalid_argument);
}

TEST_CASE("evaluation basics") {
    std::vector<Partition> tuple{parse_prt("prt(12)", 4), parse_prt("prt(23)", 4),
                                 parse_prt("prt(34)", 4)};
    CHECK(eval(parse_term("x1", 3), tuple) == tuple[0]);
    CHECK(eval(parse_term("x1 | x2", 3), tuple) == parse_prt("prt(123)", 4));
    CHECK(eval(parse_term("x1 & x2", 3), tuple) == Partition::bottom(4));
    CHECK(eval(parse_term("(x1 | x2) & (x2 | x3)", 3), tuple) == parse_prt("prt(23)", 4));
    CHECK(eval(parse_term("x1 | x2 | x3", 3), tuple) == Partition::top(4));

    CHECK_THROWS_AS(eval(parse_term("x1 | x2", 2), tuple), std::invalid_argument);
    std::vector<Partition> mixed{parse_prt("prt(12)", 4), parse_prt("prt(12)", 5)};
    CHECK_THROWS_AS(eval(parse_term("x1 | x2", 2), mixed), std::invalid_argument);
}

TEST_CASE("evaluation is monotone and equivariant") {
    SplitMix64 rng(31);
    const int n = 5, k = 4;
    for (int rep = 0; rep < 200; ++rep) {
        LatticeTerm t = random_terms(k, 1, 6, rng.next()).terms.front();
        std::vector<Partition> lo, hi, tup;
        for (int i = 0; i < k; ++i) {
            Partition a = oracles::random_partition(n, rng);
            Partition b = oracles::random_partition(n, rng);
            lo.push_back(a);
            hi.push_back(join(a, b));  // componentwise lo <= hi
            tup.push_back(a);
        }
        CHECK(leq(eval(t, lo), eval(t, hi)));

        std::vector<int> img{1, 2, 3, 4, 5};
        for (int j = n - 1; j > 0; --j) std::swap(img[j], img[rng.below(j + 1)]);
        Permutation pi(img);
        std::vector<Partition> mapped;
        for (const Partition& p : tup) mapped.push_back(p.relabel(pi));
        CHECK(eval(t, mapped) == eval(t, tup).relabel(pi));
    }
}

TEST_CASE("session key bytes") {
    TermVector tv = random_terms(4, 6, 5, 555);
    std::vector<Partition> tuple{parse_prt("prt(14)", 5), parse_prt("prt(15;23)", 5),
                                 parse_prt("prt(24;35)", 5), parse_prt("prt(12;45)", 5)};
    std::string key = derive_session_key(tv, tuple);
    CHECK(key == derive_session_key(tv, tuple));  // deterministic

    std::string expect;
    for (std::size_t i = 0; i < tv.terms.size(); ++i) {
        if (i) expect += "\n";
        expect += format_prt(eval(tv.terms[i], tuple));
    }
    CHECK(key == expect);

    // a different generating tuple gives a different key for these terms
    std::vector<Partition> other{parse_prt("prt(15)", 5), parse_prt("prt(14;23)", 5),
                                 parse_prt("prt(25;34)", 5), parse_prt("prt(12;45)", 5)};
    CHECK(key != derive_session_key(tv, other));
}
