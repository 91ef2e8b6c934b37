#include <doctest.h>

#include "itersum/polynomial.hpp"

using namespace itersum;

namespace {

Polynomial poly(std::vector<long> coeffs) {
    return Polynomial(std::vector<Scalar>(coeffs.begin(), coeffs.end()));
}

}  // namespace

TEST_CASE("evaluation and derivative") {
    Polynomial p = poly({1, -2, 3});  // 3x^2 - 2x + 1
    CHECK(p.eval(2) == 9);
    CHECK(p.eval(Scalar(1) / 2) == Scalar(3) / 4);
    CHECK(p.derivative() == poly({-2, 6}));
    CHECK(poly({5}).derivative().is_zero());
}

TEST_CASE("taylor shift and delta") {
    Polynomial cube = poly({0, 0, 0, 1});
    CHECK(cube.shifted(1) == poly({1, 3, 3, 1}));
    Polynomial d = cube.delta(1);  // 3x^2 + 3x + 1
    CHECK(d.degree() == 2);
    CHECK(d == poly({1, 3, 3}));
    // delta of a degree-d polynomial has degree d-1, for several d and h
    for (int deg = 1; deg <= 5; ++deg) {
        std::vector<Scalar> c(deg + 1, 0);
        c[deg] = 2;
        c[0] = -7;
        Polynomial q{std::move(c)};
        CHECK(q.delta(Scalar(3) / 2).degree() == deg - 1);
    }
}

TEST_CASE("sturm root counting") {
    // (x^2 - 2)(x - 3): roots -sqrt2, sqrt2, 3
    Polynomial p = poly({0, -2, 0, 1}) - poly({-6, 0, 3});
    CHECK(count_real_roots(p) == 3);
    CHECK(count_roots(p, 0, 2) == 1);
    CHECK(count_roots(p, -2, 4) == 3);
    CHECK(count_roots(p, 4, 10) == 0);
}

TEST_CASE("repeated roots are counted once") {
    Polynomial p = poly({1, -2, 1});  // (x-1)^2
    CHECK(count_real_roots(p) == 1);
    CHECK(squarefree_part(p).degree() == 1);
}

TEST_CASE("root isolation") {
    Polynomial p = poly({0, -2, 0, 1}) - poly({-6, 0, 3});
    auto roots = isolate_roots(p);
    REQUIRE(roots.size() == 3);
    for (const RootInterval& iv : roots) CHECK(count_roots(p, iv.lo, iv.hi) == 1);
    CHECK(roots[0].hi < roots[1].lo + 1);  // ordered
    RootInterval tight = refine_root(p, roots[2], Scalar(1) / 1024);
    CHECK(tight.hi - tight.lo <= Scalar(1) / 1024);
    CHECK(tight.lo < 3);
    CHECK(3 <= tight.hi);
}

TEST_CASE("nonvanishing_on") {
    Polynomial p = poly({-2, 0, 1});  // x^2 - 2
    CHECK(nonvanishing_on(p, 2, 10));
    CHECK_FALSE(nonvanishing_on(p, 0, 2));
    CHECK(nonvanishing_on(p, Scalar(-1), Scalar(1)));
}

TEST_CASE("cauchy bound covers all roots") {
    Polynomial p = poly({-15, 2, 1});  // roots 3, -5
    Scalar b = root_bound(p);
    CHECK(b >= 5);
    CHECK(count_roots(p, -b, b) == 2);
}
