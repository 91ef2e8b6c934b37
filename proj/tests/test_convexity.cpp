#include <doctest.h>

#include <functional>

#include "itersum/convexity.hpp"
#include "itersum/errors.hpp"

using namespace itersum;

namespace {

GroupedSet range_map(int n, const std::function<Scalar(int)>& f,
                     Monoid m = Monoid::additive) {
    std::vector<Scalar> v;
    for (int i = 1; i <= n; ++i) v.push_back(f(i));
    return GroupedSet::from_values(std::move(v), m);
}

GroupedSet squares(int n) { return range_map(n, [](int i) { return Scalar(i * i); }); }
GroupedSet cubes(int n) { return range_map(n, [](int i) { return Scalar(i * i * i); }); }
GroupedSet pows2(int n, Monoid m = Monoid::additive) {
    return range_map(n, [](int i) { return Scalar(1L << i); }, m);
}

}  // namespace

TEST_CASE("forward differences") {
    GroupedSet a = GroupedSet::from_values({Scalar(1), Scalar(4), Scalar(9), Scalar(16)},
                                           Monoid::additive);
    std::vector<Scalar> expect{3, 5, 7};
    CHECK(forward_differences(a) == expect);
    GroupedSet b = GroupedSet::from_values({Scalar(1), Scalar(2), Scalar(3)}, Monoid::additive);
    CHECK(forward_differences(b) == std::vector<Scalar>{1, 1});
    CHECK(forward_differences(pows2(4)) == std::vector<Scalar>{2, 4, 8});
    CHECK_THROWS_AS(forward_differences(GroupedSet::from_values({Scalar(1)}, Monoid::additive)),
                    TooSmall);
}

TEST_CASE("convexity order") {
    CHECK(convexity_order(squares(10)).order >= 1);
    CHECK(convexity_order(cubes(10)).order >= 2);
    for (int n : {6, 9, 12}) CHECK(convexity_order(pows2(n)).order == n - 2);
    GroupedSet ap =
        GroupedSet::from_values({Scalar(1), Scalar(2), Scalar(3), Scalar(4)}, Monoid::additive);
    CHECK(convexity_order(ap).order == 0);
}

TEST_CASE("evaluate exact kinds") {
    Evaluation e = evaluate(ConvexMap::integer_power_map(2), Scalar(3) / 2, 64);
    CHECK(e.exact);
    CHECK(e.value == Scalar(9) / 4);
    ConvexMap p = ConvexMap::polynomial_map(Polynomial({Scalar(0), Scalar(0), Scalar(1)}));
    CHECK(evaluate(p, -2, 64).value == 4);
}

TEST_CASE("evaluate log to certified interval") {
    Evaluation e = evaluate(ConvexMap::log_map(), 8, 20);
    CHECK_FALSE(e.exact);
    CHECK(e.hi - e.lo < Scalar(1) / (1 << 20));
    // straddles log 8 = 2.07944...
    CHECK(e.lo < parse_scalar("20795/10000"));
    CHECK(e.hi > parse_scalar("20794/10000"));
}

TEST_CASE("map_set") {
    GroupedSet a =
        GroupedSet::from_values({Scalar(1), Scalar(2), Scalar(3)}, Monoid::additive);
    GroupedSet img = map_set(ConvexMap::integer_power_map(2), a);
    CHECK(img == GroupedSet::from_values({Scalar(1), Scalar(4), Scalar(9)}, Monoid::additive));

    GroupedSet g = pows2(3, Monoid::multiplicative);
    GroupedSet carrier = map_set(ConvexMap::log_map(), g);
    CHECK(carrier.monoid() == Monoid::multiplicative);
    CHECK(carrier.elements() == g.elements());
    CHECK(iterated_combine(carrier, 2, 1).size() == 7);

    GroupedSet log_dom = GroupedSet::from_values({Scalar(1), Scalar(2), Scalar(4)},
                                                 Monoid::multiplicative);
    GroupedSet shifted = map_set(ConvexMap::shifted_log_exp_map(), log_dom);
    CHECK(shifted ==
          GroupedSet::from_values({Scalar(2), Scalar(3), Scalar(5)}, Monoid::multiplicative));
}

TEST_CASE("map_set rejects non-monotone polynomials") {
    // x^3 - 3x has a critical point inside the hull of {-2,...,2}
    ConvexMap f = ConvexMap::polynomial_map(Polynomial({Scalar(0), Scalar(-3), Scalar(0), Scalar(1)}));
    GroupedSet a = GroupedSet::from_values(
        {Scalar(-2), Scalar(-1), Scalar(0), Scalar(1), Scalar(2)}, Monoid::additive);
    CHECK_THROWS_AS(map_set(f, a), NotMonotone);
}

TEST_CASE("delta_h") {
    DifferenceMap d1 = delta_h(ConvexMap::integer_power_map(2), 1);
    CHECK(evaluate(d1, 3, 64).value == 7);
    CHECK(d1.as_polynomial() == Polynomial({Scalar(1), Scalar(2)}));

    DifferenceMap d11 = delta_h(delta_h(ConvexMap::integer_power_map(3), 1), 1);
    CHECK(evaluate(d11, 0, 64).value == 6);
    CHECK(d11.as_polynomial() == Polynomial({Scalar(6), Scalar(6)}));

    DifferenceMap ab = delta_h(delta_h(ConvexMap::integer_power_map(3), Scalar(2)), Scalar(5));
    DifferenceMap ba = delta_h(delta_h(ConvexMap::integer_power_map(3), Scalar(5)), Scalar(2));
    CHECK(ab.as_polynomial() == ba.as_polynomial());
}

TEST_CASE("function_convexity_check") {
    GroupedSet grid = range_map(20, [](int i) { return Scalar(i); });
    GridCheckReport r = function_convexity_check(ConvexMap::integer_power_map(5), 3, grid,
                                                 {Scalar(1), Scalar(2), Scalar(3)});
    CHECK(r.pass);
    REQUIRE(r.directions.size() == 4);
    for (int d : r.directions) CHECK(d == 1);

    ConvexMap wiggle =
        ConvexMap::polynomial_map(Polynomial({Scalar(0), Scalar(-3), Scalar(0), Scalar(1)}));
    GroupedSet wide = GroupedSet::from_values(
        {Scalar(-2), Scalar(-1), Scalar(0), Scalar(1), Scalar(2)}, Monoid::additive);
    GridCheckReport bad = function_convexity_check(wiggle, 1, wide, {});
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.violation.has_value());
    CHECK(bad.violation->level == 0);

    GroupedSet pos = range_map(12, [](int i) { return Scalar(i); });
    GridCheckReport lg = function_convexity_check(ConvexMap::log_map(), 1, pos, {Scalar(1)});
    CHECK(lg.pass);
    REQUIRE(lg.directions.size() == 2);
    CHECK(lg.directions[0] == 1);   // log increasing
    CHECK(lg.directions[1] == -1);  // delta_1 log decreasing
}

TEST_CASE("difference maps inherit derivative signs") {
    // sign of (delta_h f)^{(l)} on a derivative-sign-constant interval equals
    // the sign of f^{(l+1)} there
    Polynomial f({Scalar(3), Scalar(-1), Scalar(0), Scalar(0), Scalar(2)});  // 2x^4 - x + 3
    for (long hnum : {1L, 3L}) {
        Scalar h = Scalar(hnum) / 2;
        Polynomial d = f.delta(h);
        Polynomial fp = f.derivative();
        for (int l = 0; l <= 2; ++l) {
            CHECK(sign_at(d, 5) * sign_at(fp, 5) > 0);
            d = d.derivative();
            fp = fp.derivative();
        }
    }
}

TEST_CASE("convexity order matches function check on integer grids") {
    GroupedSet grid = range_map(10, [](int i) { return Scalar(i); });
    ConvexMap f = ConvexMap::integer_power_map(3);
    GridCheckReport r = function_convexity_check(f, 2, grid, {Scalar(1), Scalar(1)});
    CHECK(r.pass);
    CHECK(convexity_order(map_set(f, grid)).order >= 2);
}

TEST_CASE("convex map descriptors round-trip") {
    for (const char* text :
         {"power: 5", "poly: 0,0,1", "log", "shifted-log-exp", "real-power: 5/2@256bits",
          "power: 2; domain: 1..100"}) {
        ConvexMap m = ConvexMap::parse(text);
        CHECK(ConvexMap::parse(m.descriptor()).descriptor() == m.descriptor());
    }
    CHECK_THROWS_AS(ConvexMap::parse("nonsense: 1"), ParseError);
}
