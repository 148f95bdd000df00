#include <cmath>

#include "doctest.h"
#include "signorini/exact_solutions.hpp"
#include "signorini/field.hpp"
#include "signorini/grid.hpp"
#include "test_util.hpp"

using namespace signorini;

TEST_CASE("make_grid basic parameters") {
    auto g = make_grid(2, 9, 1.0);
    CHECK(g->spacing() == doctest::Approx(0.25));
    CHECK(g->node_count() == 81);
    CHECK(g->plane_layer() == 4);
    CHECK(g->axis_coord(g->plane_layer()) == 0.0);

    auto g3 = make_grid(3, 65, 1.0);
    CHECK(g3->spacing() == doctest::Approx(0.03125));
}

TEST_CASE("make_grid rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(2, 8, 1.0), InvalidArgument);
    CHECK_THROWS_AS(make_grid(4, 9, 1.0), InvalidArgument);
    CHECK_THROWS_AS(make_grid(2, 7, 1.0), InvalidArgument);
    CHECK_THROWS_AS(make_grid(2, 9, 0.0), InvalidArgument);
}

TEST_CASE("node coordinates cover the closed box") {
    auto g = make_grid(2, 9, 1.0);
    CHECK(g->axis_coord(0) == -1.0);
    CHECK(g->axis_coord(8) == 1.0);
    CHECK(g->contains({1.0, -1.0, 0.0}));
    CHECK(!g->contains({1.0001, 0.0, 0.0}));
}

TEST_CASE("sample evaluates closed forms at nodes") {
    auto g = make_grid(2, 9, 1.0);
    auto zero = sample(g, [](const Vec&) { return 0.0; });
    for (double v : zero.values()) CHECK(v == 0.0);

    // f = x_{n-1} on n=2 runs along axis 0 with values -1, -0.75, ..., 1.
    auto lin = sample(g, [](const Vec& p) { return p[0]; });
    for (int i = 0; i < 9; ++i) {
        CHECK(lin.at({i, 4, 0}) == doctest::Approx(-1.0 + 0.25 * i));
    }
}

TEST_CASE("sample reports the offending node on non-finite values") {
    auto g = make_grid(2, 9, 1.0);
    const std::size_t bad = g->index({4, 4, 0});
    try {
        sample(g, [&](const Vec& p) {
            return (p[0] == 0.0 && p[1] == 0.0) ? std::nan("") : 1.0;
        });
        FAIL("expected SamplingError");
    } catch (const SamplingError& e) {
        CHECK(e.node_index == bad);
    }
}

TEST_CASE("interpolation is exact on nodes and multilinear functions") {
    auto g = make_grid(2, 9, 1.0);
    testutil::Lcg rng(42);
    const double a = 0.7, b = -1.3, c = 0.4, d = 2.1;
    auto f = [&](const Vec& p) { return a + b * p[0] + c * p[1] + d * p[0] * p[1]; };
    auto u = sample(g, f);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            const Vec p = g->coord({i, j, 0});
            CHECK(interpolate(u, p) == doctest::Approx(f(p)).epsilon(1e-14));
        }
    for (int k = 0; k < 200; ++k) {
        const Vec p = rng.point_in_box(2, 1.0);
        CHECK(interpolate(u, p) == doctest::Approx(f(p)).epsilon(1e-12));
    }

    // x1 x2 at a cell center equals the product of the midpoint values.
    auto prod = sample(g, [](const Vec& p) { return p[0] * p[1]; });
    CHECK(interpolate(prod, {0.125, 0.125, 0.0}) == doctest::Approx(0.125 * 0.125).epsilon(1e-14));
}

TEST_CASE("interpolation is exact on trilinear functions in 3D") {
    auto g = make_grid(3, 9, 1.0);
    testutil::Lcg rng(7);
    double c[8];
    for (double& x : c) x = rng.range(-2.0, 2.0);
    auto f = [&](const Vec& p) {
        return c[0] + c[1] * p[0] + c[2] * p[1] + c[3] * p[2] + c[4] * p[0] * p[1] +
               c[5] * p[0] * p[2] + c[6] * p[1] * p[2] + c[7] * p[0] * p[1] * p[2];
    };
    auto u = sample(g, f);
    for (int k = 0; k < 200; ++k) {
        const Vec p = rng.point_in_box(3, 1.0);
        CHECK(interpolate(u, p) == doctest::Approx(f(p)).epsilon(1e-12));
    }
}

TEST_CASE("interpolate rejects points outside the box") {
    auto g = make_grid(2, 9, 1.0);
    auto u = sample(g, [](const Vec&) { return 1.0; });
    CHECK_THROWS_AS(interpolate(u, {1.1, 0.0, 0.0}), OutOfDomain);
}

TEST_CASE("gradient is exact on affine and quadratic fields") {
    auto g = make_grid(2, 17, 1.0);
    auto aff = sample(g, [](const Vec& p) { return 0.3 - 1.7 * p[0] + 0.9 * p[1]; });
    const Vec gr = gradient(aff, {0.25, -0.25, 0.0});
    CHECK(gr[0] == doctest::Approx(-1.7).epsilon(1e-12));
    CHECK(gr[1] == doctest::Approx(0.9).epsilon(1e-12));

    auto sq = sample(g, [](const Vec& p) { return p[0] * p[0]; });
    const Vec gq = gradient(sq, {0.5, 0.0, 0.0});
    CHECK(gq[0] == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(gradient(aff, {1.0, 0.0, 0.0}), OutOfDomain);
}

TEST_CASE("gradient approaches the analytic profile gradient") {
    const Direction axis = Direction::axis(0, 2);
    auto g = make_grid(2, 129, 1.0);
    auto u = sample(g, [&](const Vec& p) { return regular_profile(p, axis); }, true);
    // rho = 0.5, psi = pi/4.
    const double s = 0.5 * std::cos(0.25 * std::numbers::pi);
    const double t = 0.5 * std::sin(0.25 * std::numbers::pi);
    const Vec p{s, t, 0.0};
    const Vec got = gradient(u, p);
    const Vec want = regular_profile_gradient(p, axis, 2);
    const double h = g->spacing();
    const double bound = 25.0 * h * h / std::sqrt(0.5);
    CHECK(std::abs(got[0] - want[0]) < bound);
    CHECK(std::abs(got[1] - want[1]) < bound);
}

TEST_CASE("symmetric flag verifies the mirror identity") {
    auto g = make_grid(2, 9, 1.0);
    auto even = sample(g, [](const Vec& p) { return p[1] * p[1]; }, true);
    CHECK(even.symmetric());
    CHECK_THROWS_AS(sample(g, [](const Vec& p) { return p[1]; }, true), InvalidArgument);
}
