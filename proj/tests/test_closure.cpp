#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "partlat/closure.hpp"
#include "partlat/partition.hpp"

using namespace partlat;

namespace {

std::set<Partition> as_set(const std::vector<Partition>& v) { return {v.begin(), v.end()}; }

bool subset(const std::set<Partition>& a, const std::set<Partition>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(closure({}), std::invalid_argument);
    std::vector<Partition> mixed{Partition::bottom(4), Partition::bottom(5)};
    CHECK_THROWS_AS(closure(mixed), std::invalid_argument);
    Partition one = parse_prt("prt(12)", 4);
    auto res = closure({one});
    CHECK(res.set == std::vector<Partition>{one});
    CHECK(res.report.pair_ops == 0);
    CHECK(!res.report.budget_hit);
}

TEST_CASE("closure is extensive idempotent monotone") {
    const auto part5 = enumerate_all_partitions(5);
    SplitMix64 rng(101);
    for (int rep = 0; rep < 100; ++rep) {
        int size = 2 + static_cast<int>(rng.below(4));
        auto phi = oracles::random_subset(part5, size, rng);
        auto closed = as_set(closure(phi).set);
        CHECK(subset(as_set(phi), closed));                          // extensive
        auto again = as_set(closure({closed.begin(), closed.end()}).set);
        CHECK(again == closed);                                      // idempotent
        auto larger = phi;
        larger.push_back(part5[rng.below(part5.size())]);
        CHECK(subset(closed, as_set(closure(larger).set)));          // monotone
        // closed under both operations, by definition of sublattice
        for (const Partition& p : closed)
            for (const Partition& q : closed) {
                CHECK(closed.count(meet(p, q)) == 1);
                CHECK(closed.count(join(p, q)) == 1);
            }
    }
}

TEST_CASE("known closure sizes") {
    auto quad = [](const char* a, const char* b, const char* c, const char* d, int n) {
        return std::vector<Partition>{parse_prt(a, n), parse_prt(b, n), parse_prt(c, n),
                                      parse_prt(d, n)};
    };
    CHECK(closure(quad("prt(12)", "prt(23)", "prt(34)", "prt(14)", 4)).set.size() == 15);
    CHECK(closure(quad("prt(12;34)", "prt(23)", "prt(124)", "prt(134)", 4)).set.size() == 15);
    CHECK(closure(quad("prt(123)", "prt(35)", "prt(25;34)", "prt(145)", 5)).set.size() == 52);
    CHECK(closure(quad("prt(123)", "prt(147;56)", "prt(357;46)", "prt(15;26;34)", 7)).set.size() ==
          877);
    // all of Part(4) and Part(5): the closure is the whole lattice
    CHECK(closure(quad("prt(12)", "prt(23)", "prt(34)", "prt(14)", 4)).set.size() ==
          bell_number(4));
}

TEST_CASE("generation verdicts") {
    std::vector<Partition> good{parse_prt("prt(12)", 4), parse_prt("prt(23)", 4),
                                parse_prt("prt(34)", 4), parse_prt("prt(14)", 4)};
    ClosureReport r = generates(good, 4);
    CHECK(r.verdict == Verdict::Generates);
    CHECK(r.atoms_found == 6);

    std::vector<Partition> chain{Partition::bottom(4), parse_prt("prt(12)", 4),
                                 parse_prt("prt(123)", 4), Partition::top(4)};
    CHECK(generates(chain, 4).verdict == Verdict::NotGenerates);
    CHECK(generates({Partition::top(5)}, 5).verdict == Verdict::NotGenerates);

    // tiny budget cannot decide
    ClosureReport tight = generates(good, 4, 2);
    CHECK(tight.verdict == Verdict::Unknown);
    CHECK(tight.budget_hit);
    CHECK(tight.pair_ops <= 2);

    CHECK_THROWS_AS(generates(good, 5), std::invalid_argument);
}

TEST_CASE("early exit and full closure agree") {
    const auto part5 = enumerate_all_partitions(5);
    SplitMix64 rng(202);
    for (int rep = 0; rep < 200; ++rep) {
        auto phi = oracles::random_subset(part5, 4, rng);
        Verdict quick = generates(phi, 5).verdict;
        const auto closed = closure(phi).set;
        bool covered = true;
        for (const Partition& a : all_atoms(5))
            if (std::find(closed.begin(), closed.end(), a) == closed.end()) {
                covered = false;
                break;
            }
        CHECK(quick == (covered ? Verdict::Generates : Verdict::NotGenerates));
        if (covered) CHECK(closed.size() == bell_number(5));
    }
}

TEST_CASE("parallel expansion returns the identical set") {
    std::vector<Partition> phi{parse_prt("prt(123)", 7), parse_prt("prt(147;56)", 7),
                               parse_prt("prt(357;46)", 7), parse_prt("prt(15;26;34)", 7)};
    ClosureResult serial = closure(phi);
    ClosureResult wide = closure(phi, kDefaultPairBudget, 3);
    CHECK(serial.set == wide.set);  // same elements in the same insertion order
    CHECK(serial.report.pair_ops_exact);
    CHECK(serial.report.verdict == wide.report.verdict);

    ClosureReport g1 = generates(phi, 7);
    ClosureReport g3 = generates(phi, 7, kDefaultPairBudget, 3);
    CHECK(g1.verdict == Verdict::Generates);
    CHECK(g3.verdict == Verdict::Generates);
}

TEST_CASE("membership") {
    std::vector<Partition> phi{parse_prt("prt(123)", 5), parse_prt("prt(35)", 5),
                               parse_prt("prt(25;34)", 5), parse_prt("prt(145)", 5)};
    CHECK(member_of_closure(Partition::top(5), phi) == Ternary::True);
    CHECK(member_of_closure(parse_prt("prt(12)", 5), phi) == Ternary::True);

    std::vector<Partition> chain{parse_prt("prt(12)", 5), parse_prt("prt(123)", 5)};
    CHECK(member_of_closure(parse_prt("prt(45)", 5), chain) == Ternary::False);
    CHECK(member_of_closure(parse_prt("prt(12)", 5), chain) == Ternary::True);

    CHECK(member_of_closure(Partition::top(5), phi, 1) == Ternary::Unknown);
    CHECK_THROWS_AS(member_of_closure(Partition::top(4), phi), std::invalid_argument);
}

TEST_CASE("enumeration matches the bell counts") {
    for (int n = 1; n <= 7; ++n) {
        auto all = enumerate_all_partitions(n);
        CHECK(all.size() == bell_number(n));
        CHECK(all.size() == oracles::bell(n));
        CHECK(as_set(all).size() == all.size());
        CHECK(std::find(all.begin(), all.end(), Partition::bottom(n)) != all.end());
        CHECK(std::find(all.begin(), all.end(), Partition::top(n)) != all.end());
    }
    CHECK_THROWS_AS(enumerate_all_partitions(11), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_all_partitions(0), std::invalid_argument);
    CHECK(enumerate_all_partitions(12, 12).size() == bell_number(12));
}

TEST_CASE("bell numbers against the binomial-sum oracle") {
    for (int n = 0; n <= 25; ++n) CHECK(bell_number(n) == oracles::bell(n));
    CHECK(bell_number(9) == 21147);
    CHECK(bell_number(25) == 4638590332229999353ULL);
    CHECK_THROWS_AS(bell_number(26), std::invalid_argument);
    CHECK_THROWS_AS(bell_number(-1), std::invalid_argument);
}
