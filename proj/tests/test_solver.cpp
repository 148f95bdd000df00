#include <cmath>

#include "doctest.h"
#include "signorini/exact_solutions.hpp"
#include "signorini/solver.hpp"
#include "test_util.hpp"

using namespace signorini;

namespace {

ProblemSpec base_spec(int dim, int m) {
    ProblemSpec s;
    s.dim = dim;
    s.m = m;
    return s;
}

}  // namespace

TEST_CASE("constant boundary data converges in one sweep") {
    ProblemSpec s = base_spec(2, 17);
    s.boundary = [](const Vec&) { return 1.0; };
    const SolveResult r = solve(s);
    CHECK(r.converged);
    CHECK(r.sweeps == 1);
    CHECK(r.final_update == 0.0);
    for (double v : r.u.values()) CHECK(v == 1.0);
    CHECK(r.complementarity.max_violation_u == 0.0);
    CHECK(r.complementarity.max_violation_flux == 0.0);
    CHECK(r.complementarity.max_violation_product == 0.0);
}

TEST_CASE("spec validation") {
    ProblemSpec s = base_spec(2, 17);
    s.boundary = [](const Vec&) { return 1.0; };
    s.relaxation = 2.0;
    CHECK_THROWS_AS(solve(s), InvalidArgument);
    s.relaxation = 1.0;
    s.max_sweeps = 0;
    CHECK_THROWS_AS(solve(s), InvalidArgument);
    ProblemSpec missing = base_spec(2, 17);
    CHECK_THROWS_AS(solve(missing), InvalidArgument);
}

TEST_CASE("nonconvergence is flagged, not thrown") {
    ProblemSpec s = base_spec(2, 33);
    s.boundary = [](const Vec& p) { return p[0]; };
    s.max_sweeps = 3;
    const SolveResult r = solve(s);
    CHECK(!r.converged);
    CHECK(r.sweeps == 3);
}

TEST_CASE("manufactured 2D solution approaches the regular profile") {
    const Direction axis = Direction::axis(0, 2);
    ProblemSpec s = base_spec(2, 65);
    s.boundary = [&](const Vec& p) { return regular_profile(p, axis); };
    const SolveResult r = solve(s);
    REQUIRE(r.converged);

    // Energy descent at relaxation 1 for every sweep.
    for (std::size_t k = 1; k < r.energy.size(); ++k)
        CHECK(r.energy[k] <= r.energy[k - 1] + 1e-12 * (1.0 + std::abs(r.energy[k - 1])));

    // Exact symmetry of the reconstruction.
    CHECK(r.u.symmetric());

    // Maximum principle.
    double gmin = 1e300, gmax = -1e300;
    const Grid& g = r.u.grid();
    for (int i = 0; i < g.nodes_per_axis(); ++i) {
        for (int j : {0, g.nodes_per_axis() - 1}) {
            gmin = std::min({gmin, r.u.at({i, j, 0}), r.u.at({j, i, 0})});
            gmax = std::max({gmax, r.u.at({i, j, 0}), r.u.at({j, i, 0})});
        }
    }
    double umin = 1e300, umax = -1e300;
    for (double v : r.u.values()) {
        umin = std::min(umin, v);
        umax = std::max(umax, v);
    }
    CHECK(umin >= std::min(0.0, gmin) - 1e-12);
    CHECK(umax <= gmax + 1e-12);

    // Nodal error against the closed form; first-order near the free
    // boundary dominates.
    double err = 0.0;
    std::array<int, 3> idx{};
    for (idx[0] = 0; idx[0] < g.nodes_per_axis(); ++idx[0])
        for (idx[1] = 0; idx[1] < g.nodes_per_axis(); ++idx[1])
            err = std::max(err, std::abs(r.u.at(idx) - regular_profile(g.coord(idx), axis)));
    CHECK(err < 4e-2);

    // Plane nonnegativity is exact by projection.
    const int mid = g.plane_layer();
    for (int i = 1; i + 1 < g.nodes_per_axis(); ++i) CHECK(r.u.at({i, mid, 0}) >= 0.0);

    // Discrete complementarity residuals at the solver tolerance scale.
    CHECK(r.complementarity.max_violation_u == 0.0);
    CHECK(r.complementarity.max_violation_flux <= r.eps_comp);
    CHECK(r.complementarity.max_violation_product <= r.eps_comp);
}

TEST_CASE("comparison principle: larger data gives larger solution") {
    ProblemSpec a = base_spec(2, 33);
    a.boundary = [](const Vec& p) { return p[0]; };
    ProblemSpec b = base_spec(2, 33);
    b.boundary = [](const Vec& p) { return p[0] + 0.1; };
    const SolveResult ra = solve(a);
    const SolveResult rb = solve(b);
    for (std::size_t i = 0; i < ra.u.values().size(); ++i)
        CHECK(rb.u[i] >= ra.u[i] - 1e-8);
}

TEST_CASE("degenerate quadratic data reproduces the exact polynomial") {
    const auto quad = ProfileSpec::quadratic(3, {1.0, 1.0}, 2.0);
    ProblemSpec s = base_spec(3, 33);
    s.boundary = [&](const Vec& p) { return quad(p); };
    const SolveResult r = solve(s);
    REQUIRE(r.converged);
    const Grid& g = r.u.grid();
    double err = 0.0;
    std::array<int, 3> idx{};
    for (idx[0] = 0; idx[0] < 33; ++idx[0])
        for (idx[1] = 0; idx[1] < 33; ++idx[1])
            for (idx[2] = 0; idx[2] < 33; ++idx[2])
                err = std::max(err, std::abs(r.u.at(idx) - quad(g.coord(idx))));
    CHECK(err < 1e-7);

    // The plane trace touches zero only at the origin; elsewhere it stays
    // above h^2 minus the solver tolerance.
    const int mid = g.plane_layer();
    for (int i = 1; i + 1 < 33; ++i)
        for (int j = 1; j + 1 < 33; ++j) {
            const double v = r.u.at({i, j, mid});
            if (i == mid && j == mid)
                CHECK(std::abs(v) <= 1e-7);
            else
                CHECK(v > 1e-4);
        }
}

TEST_CASE("complementarity report flags constructed violations") {
    auto g = make_grid(2, 17, 1.0);
    std::vector<double> vals(g->node_count(), 1.0);
    const int mid = g->plane_layer();
    // Violate u >= 0 at one interior plane node by 0.1.
    vals[g->index({5, mid, 0})] = -0.1;
    // Mirror so the field is symmetric.
    ScalarField u(g, std::move(vals), false);
    const auto rep = complementarity_report(u);
    CHECK(rep.max_violation_u == doctest::Approx(0.1));
}

TEST_CASE("regularity diagnostics on closed forms") {
    auto g = make_grid(2, 33, 1.0);
    auto aff = sample(g, [](const Vec& p) { return 0.25 + 0.5 * p[0]; }, false);
    const auto da = regularity_diagnostics(aff);
    CHECK(da.lipschitz_seminorm == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(da.tangential_semiconvexity_min == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(da.c_half_seminorm == doctest::Approx(0.0).epsilon(1e-10));

    auto sq = sample(g, [](const Vec& p) { return p[0] * p[0] + p[1] * p[1]; }, true);
    const auto ds = regularity_diagnostics(sq);
    CHECK(ds.tangential_semiconvexity_min == doctest::Approx(2.0).epsilon(1e-10));

    // The profile's C^{1,1/2} seminorm stays bounded under refinement.
    const Direction axis = Direction::axis(0, 2);
    auto p65 = sample(make_grid(2, 65, 1.0),
                      [&](const Vec& p) { return regular_profile(p, axis); }, true);
    auto p129 = sample(make_grid(2, 129, 1.0),
                       [&](const Vec& p) { return regular_profile(p, axis); }, true);
    const auto d65 = regularity_diagnostics(p65);
    const auto d129 = regularity_diagnostics(p129);
    CHECK(d129.c_half_ratio == doctest::Approx(d65.c_half_ratio).epsilon(0.25));
    CHECK(std::isfinite(d129.c_half_seminorm));
}

TEST_CASE("dirichlet energy of linear fields") {
    auto g = make_grid(2, 17, 1.0);
    auto lin = sample(g, [](const Vec& p) { return p[0]; }, true);
    // (m-1) m edges of jump h each: m (m-1) h^2 = 4 m / (m-1), the edge-sum
    // counterpart of int |grad|^2 = 4 with full weight on boundary rows.
    const double e = dirichlet_energy(lin);
    CHECK(e == doctest::Approx(4.0 * 17.0 / 16.0).epsilon(1e-12));
}
