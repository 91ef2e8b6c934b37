#include <doctest.h>

#include <random>

#include "itersum/errors.hpp"
#include "itersum/experiments.hpp"

using namespace itersum;

TEST_CASE("oracle_iterated basics") {
    GroupedSet a = GroupedSet::from_values({Scalar(0), Scalar(1)}, Monoid::additive);
    GroupedSet expect =
        GroupedSet::from_values({Scalar(-1), Scalar(0), Scalar(1), Scalar(2)}, Monoid::additive);
    CHECK(oracle_iterated(a, 2, 1) == expect);
    CHECK(oracle_iterated(a, 2, 1) == iterated_combine(a, 2, 1));

    GroupedSet b =
        GroupedSet::from_values({Scalar(1), Scalar(4), Scalar(9)}, Monoid::additive);
    GroupedSet o = oracle_iterated(b, 2, 1);
    CHECK(o.size() == 12);
    CHECK(o == iterated_combine(b, 2, 1));
    CHECK(oracle_iterated(b, 1, 0) == b);
}

TEST_CASE("oracle equivalence on seeded instances") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> val(1, 60);
    std::uniform_int_distribution<int> size(2, 8), mm(1, 3), nn(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Scalar> v;
        int n = size(rng);
        for (int i = 0; i < n; ++i) v.emplace_back(val(rng));
        Monoid mon = trial % 2 ? Monoid::multiplicative : Monoid::additive;
        GroupedSet a = GroupedSet::from_values(std::move(v), mon);
        unsigned m = mm(rng), k = nn(rng);
        CHECK(oracle_iterated(a, m, k) == iterated_combine(a, m, k));
    }
}

TEST_CASE("make_family") {
    GroupedSet p = make_family("powers:3", 5);
    CHECK(p == GroupedSet::from_values(
                   {Scalar(1), Scalar(8), Scalar(27), Scalar(64), Scalar(125)},
                   Monoid::additive));
    GroupedSet ap = make_family("ap:2", 4);
    CHECK(ap == GroupedSet::from_values({Scalar(1), Scalar(3), Scalar(5), Scalar(7)},
                                        Monoid::additive));
    GroupedSet g = make_family("geometric:2", 3);
    CHECK(g.monoid() == Monoid::multiplicative);
    CHECK(g.elements() == std::vector<Scalar>{2, 4, 8});
    CHECK_THROWS_AS(make_family("mystery:1", 4), BadFamily);
}

TEST_CASE("random-convex families hit the requested order") {
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        GroupedSet a = make_family("random-convex:2", 10, seed);
        CHECK(a.size() == 10);
        CHECK(convexity_order(a).order >= 2);
        CHECK(a == make_family("random-convex:2", 10, seed));  // seed-determined
    }
}

TEST_CASE("check_theorem3 report") {
    ExperimentReport rep = check_theorem3("powers:3", {7, 15}, 2);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.pass);
    for (const ReportRow& r : rep.rows) CHECK(r.verdict == "pass");
    ExperimentReport ap = check_theorem3("ap:1", {15}, 1);
    CHECK(ap.rows.at(0).verdict == "expected-failure");
}

TEST_CASE("check_theorem4 report") {
    GroupedSet a = make_family("ap:1", 16);
    ExperimentReport rep = check_theorem4(a, ConvexMap::integer_power_map(2), 1);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].verdict == "pass");
    CHECK(rep.rows[0].plus2minus1 == "46");  // |A+A-A| = 3N-2

    ExperimentReport small = check_theorem4(make_family("ap:1", 10),
                                            ConvexMap::integer_power_map(2), 1);
    CHECK(small.rows[0].verdict == "expected-failure");
}

TEST_CASE("check_corollary") {
    GroupedSet a = make_family("ap:1", 16);
    ExperimentReport r1 = check_corollary(1, a, 2, parse_scalar("1/4"));
    CHECK(r1.rows[0].plus2 == "31");
    CHECK(r1.rows[0].verdict == "report-only");
    CHECK(!r1.rows[0].quotient.empty());
    // delta too small: |A+A| = 31 > 16
    CHECK_THROWS_AS(check_corollary(1, a, 2, Scalar(0)), HypothesisViolated);

    GroupedSet g = make_family("geometric:2", 12);
    ExperimentReport r2 = check_corollary(2, g, 2, parse_scalar("1/2"));
    CHECK(r2.rows[0].verdict == "report-only");

    ExperimentReport r3 = check_corollary(3, a, 2, Scalar(1));
    CHECK(r3.rows[0].verdict == "report-only");

    // degree-2 polynomial with a vertex inside A: root isolation trims A
    Polynomial vertex({Scalar(0), Scalar(-16), Scalar(1)});  // x^2 - 16x, vertex at 8
    ExperimentReport r3p = check_corollary(3, a, 2, Scalar(1), &vertex);
    CHECK(r3p.rows[0].N < a.size());
    CHECK(r3p.rows[0].verdict == "report-only");
}

TEST_CASE("check_threefold") {
    ExperimentReport ap = check_threefold(make_family("ap:1", 64));
    CHECK(ap.rows[0].plus2minus1 == "190");
    CHECK(ap.rows[0].verdict == "pass");
    // the additive side alone gives 190 / 34.8 ~ 5.45; the max can only be larger
    double ratio = std::stod(ap.rows[0].ratio);
    CHECK(ratio > 5.0);

    ExperimentReport gp = check_threefold(make_family("geometric:2", 64));
    CHECK(gp.rows[0].quotient == "190");
    CHECK(gp.rows[0].verdict == "pass");

    ExperimentReport one = check_threefold(make_family("ap:1", 1));
    CHECK(one.rows[0].verdict == "pass");
}

TEST_CASE("growth_report") {
    ExperimentReport rep = growth_report("ap:1", {1}, {8, 16, 32});
    // AP rows plus one slope row
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.rows[3].map == "slope");
    double slope = std::stod(rep.rows[3].measured);
    CHECK(slope > 0.9);
    CHECK(slope < 1.1);

    ExperimentReport empty = growth_report("ap:1", {1}, {});
    CHECK(empty.rows.empty());
}

TEST_CASE("reports are deterministic and well-formed") {
    ExperimentReport a = check_threefold(make_family("ap:1", 32));
    ExperimentReport b = check_threefold(make_family("ap:1", 32));
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv().rfind("family,N,k,map,|A+A|,|A+A-A|,|AA/A|,measured,bound,ratio,verdict",
                           0) == 0);
}
