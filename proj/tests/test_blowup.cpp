#include <cmath>
#include <numbers>

#include "doctest.h"
#include "signorini/blowup.hpp"
#include "signorini/exact_solutions.hpp"
#include "signorini/quadrature.hpp"
#include "test_util.hpp"

using namespace signorini;

namespace {

ScalarField profile_field(int dim, int m, const Direction& axis, double scale_factor = 1.0) {
    auto g = make_grid(dim, m, 1.0);
    return sample(
        g, [&](const Vec& p) { return scale_factor * regular_profile(p, axis); }, true);
}

}  // namespace

TEST_CASE("rescale normalizes the unit-sphere trace") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    for (double r : {0.125, 0.25, 0.4375}) {
        const BlowupField v = rescale(u, Vec{}, r, 2.0);
        CHECK(sphere_rms(v.field, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
    }
    const Direction axis3 = Direction::axis(1, 3);
    auto u3 = profile_field(3, 65, axis3);
    const BlowupField v3 = rescale(u3, Vec{}, 0.25, 2.0);
    CHECK(sphere_rms(v3.field, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("rescale is exactly scale invariant") {
    // The normalization removes the magnitude of a constant factor; a sign
    // flip survives.
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 65, axis);
    auto cu = profile_field(2, 65, axis, 11.0);
    auto nu = profile_field(2, 65, axis, -11.0);
    const BlowupField a = rescale(u, Vec{}, 0.25, 2.0);
    const BlowupField b = rescale(cu, Vec{}, 0.25, 2.0);
    const BlowupField c = rescale(nu, Vec{}, 0.25, 2.0);
    for (std::size_t i = 0; i < a.field.values().size(); ++i) {
        if (a.field[i] == 0.0) {
            CHECK(std::abs(b.field[i]) < 1e-13);
        } else {
            CHECK(b.field[i] / a.field[i] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(c.field[i] / a.field[i] == doctest::Approx(-1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("rescale window and degeneracy errors") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 65, axis);
    CHECK_THROWS_AS(rescale(u, Vec{}, 0.5, 2.0), InvalidRadius);
    auto zeros = sample(make_grid(2, 65, 1.0), [](const Vec&) { return 0.0; }, true);
    CHECK_THROWS_AS(rescale(zeros, Vec{}, 0.25, 2.0), DegenerateCenter);
}

TEST_CASE("homogeneous fields are blow-up fixed points") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    const BlowupField va = rescale(u, Vec{}, 0.25, 2.0);
    const BlowupField vb = rescale(u, Vec{}, 0.125, 2.0);
    // Traces on the unit sphere agree within 2e-2 in the averaged L2 metric.
    const auto pts = sphere_quadrature(2, Vec{}, 1.0, 512);
    double diff2 = 0.0, area = 0.0;
    for (const auto& q : pts) {
        const double d = interpolate(va.field, q.x) - interpolate(vb.field, q.x);
        diff2 += q.w * d * d;
        area += q.w;
    }
    CHECK(std::sqrt(diff2 / area) < 2e-2);
}

TEST_CASE("fit_profile recovers the regular profile and its axis") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    const BlowupField v = rescale(u, Vec{}, 0.25, 2.0);
    const BlowupClassification c = fit_profile(v);
    CHECK(c.cls == ProfileClass::Regular);
    CHECK(c.mu == doctest::Approx(1.5).epsilon(0.03));
    CHECK(c.regular_residual <= 1e-2);
    CHECK(angle_between(c.axis, axis) <= 1e-2);

    // 3D with a rotated in-plane axis.
    const double ang = 0.35;
    const Direction axis3 = Direction::make({std::cos(ang), std::sin(ang), 0.0}, 3);
    auto g3 = make_grid(3, 97, 1.0);
    auto u3 = sample(g3, [&](const Vec& p) { return regular_profile(p, axis3); }, true);
    const BlowupField v3 = rescale(u3, Vec{}, 16.0 * g3->spacing(), 2.0);
    const BlowupClassification c3 = fit_profile(v3);
    CHECK(c3.cls == ProfileClass::Regular);
    CHECK(angle_between(c3.axis, axis3) <= 1e-2);
    CHECK(c3.regular_residual <= 2e-2);
}

TEST_CASE("fit_profile recovers the degenerate quadratic") {
    const auto quad = ProfileSpec::quadratic(3, {1.0, 1.0}, 2.0);
    auto g = make_grid(3, 97, 1.0);
    auto u = sample(g, [&](const Vec& p) { return quad(p); }, true);
    const BlowupField v = rescale(u, Vec{}, 16.0 * g->spacing(), 2.0);
    const BlowupClassification c = fit_profile(v);
    CHECK(c.cls == ProfileClass::DegenerateQuadratic);
    CHECK(c.mu == doctest::Approx(2.0).epsilon(0.02));
    CHECK(c.quad_residual <= 1e-2);
    // Coefficient pattern (a, a, 2a): ratios within 2%.
    CHECK(c.quad_a[0] / c.quad_a[1] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(c.quad_c / (c.quad_a[0] + c.quad_a[1]) == doctest::Approx(1.0).epsilon(1e-12));

    // The 2D even Lewy member is exactly the 2D harmonic quadratic.
    auto g2 = make_grid(2, 129, 1.0);
    auto lw = sample(g2, [](const Vec& p) { return lewy_family(1, LewyParity::Even, p); }, true);
    const BlowupField v2 = rescale(lw, Vec{}, 0.25, 2.0);
    const BlowupClassification c2 = fit_profile(v2);
    CHECK(c2.cls == ProfileClass::DegenerateQuadratic);
}

TEST_CASE("fit_profile rejects non-normalized input") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    BlowupField v = rescale(u, Vec{}, 0.25, 2.0);
    for (double& x : v.field.mutable_values()) x *= 2.0;
    CHECK_THROWS_AS(fit_profile(v), InvalidArgument);
}

TEST_CASE("convexity check on closed forms") {
    // 2D: x1^2 has tangential second difference exactly 2; -x1^2 exactly -2.
    auto g = make_grid(2, 65, 2.0);
    auto mk = [&](double s) {
        std::vector<double> vals(g->node_count());
        std::array<int, 3> idx{};
        for (std::size_t f = 0; f < vals.size(); ++f) {
            idx = g->unpack(f);
            const Vec p = g->coord(idx);
            vals[f] = s * p[0] * p[0];
        }
        BlowupField b{ScalarField(g, std::move(vals), true)};
        b.outer_radius = 2.0;
        return b;
    };
    CHECK(convexity_check(mk(1.0)) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(convexity_check(mk(-1.0)) == doctest::Approx(-2.0).epsilon(1e-10));

    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    const BlowupField v = rescale(u, Vec{}, 16.0 / 128.0 * 2.0, 2.0);
    CHECK(convexity_check(v) >= -0.02);
}

TEST_CASE("cone bound margins of the regular profile") {
    const Direction axis = Direction::axis(1, 3);
    auto g3 = make_grid(3, 97, 1.0);
    auto u3 = sample(g3, [&](const Vec& p) { return regular_profile(p, axis); }, true);
    const BlowupField v = rescale(u3, Vec{}, 16.0 * g3->spacing(), 2.0);

    const double m1 = cone_bound_check(v, 1.0, 0.25, axis);
    CHECK(m1 > 0.0);
    const double m2 = cone_bound_check(v, 0.5, 0.1, axis);
    CHECK(m2 > 0.0);
    CHECK(m2 < m1);

    // Sign flip breaks the certification.
    auto neg = sample(g3, [&](const Vec& p) { return -regular_profile(p, axis); }, true);
    const BlowupField vn = rescale(neg, Vec{}, 16.0 * g3->spacing(), 2.0);
    CHECK(cone_bound_check(vn, 1.0, 0.25, axis) < 0.0);

    CHECK_THROWS_AS(cone_bound_check(v, 0.3, 0.25), InvalidArgument);
    CHECK_THROWS_AS(cone_bound_check(v, 1.0, 0.7), InvalidArgument);
}

TEST_CASE("classification is consistent with the cone bound") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    const BlowupField v = rescale(u, Vec{}, 0.25, 2.0);
    const BlowupClassification c = fit_profile(v);
    REQUIRE(c.cls == ProfileClass::Regular);
    CHECK(c.cone_margin > 0.0);
}

TEST_CASE("fit_profile mu matches the source-field estimate at matching windows") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    const double r = 28.0 / 64.0;  // blow-up fit window maps into [8h, L/4]
    const BlowupField v = rescale(u, Vec{}, r, 2.0);
    const BlowupClassification c = fit_profile(v);
    const auto rep = frequency_profile(u, Vec{}, default_radii(u.grid(), Vec{}));
    REQUIRE(rep.mu.valid);
    CHECK(std::abs(c.mu - rep.mu.mu) <= 0.05);
}

TEST_CASE("classify_across_scales flags instability") {
    const Direction axis = Direction::axis(0, 2);
    auto u = profile_field(2, 129, axis);
    const std::vector<double> radii{0.125, 0.25};
    const auto multi = classify_across_scales(u, Vec{}, radii, 2.0);
    CHECK(multi.stable);
    CHECK(multi.cls == ProfileClass::Regular);
}
