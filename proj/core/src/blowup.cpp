#include "signorini/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "signorini/errors.hpp"
#include "signorini/exact_solutions.hpp"
#include "signorini/quadrature.hpp"

namespace signorini {

const char* to_string(ProfileClass c) {
    switch (c) {
        case ProfileClass::Regular: return "Regular";
        case ProfileClass::DegenerateQuadratic: return "DegenerateQuadratic";
        case ProfileClass::Other: return "Other";
    }
    return "Other";
}

double sphere_rms(const ScalarField& u, double r) {
    return std::sqrt(phi_average(u, Vec{}, r));
}

namespace {

int default_blowup_m(double r, double R, double h) {
    // Matching the source resolution puts blow-up nodes on source nodes when
    // r is a node multiple of h; 97 is the floor that keeps the mu fit
    // window [8h_b, R/4] nonempty.
    int aligned = static_cast<int>(std::lround(2.0 * R * r / h)) + 1;
    if (aligned % 2 == 0) ++aligned;
    return std::clamp(aligned, 97, 129);
}

}  // namespace

BlowupField rescale(const ScalarField& u, const Vec& center, double r, double R,
                    int m_override) {
    const Grid& g = u.grid();
    const double h = g.spacing();
    if (!(R > 1.0)) throw InvalidArgument("rescale: outer radius must exceed 1");
    if (r * R > g.boundary_distance(center) - 2.0 * h + 1e-12)
        throw InvalidRadius("rescale: r R exceeds boundary_distance(center) - 2h");
    const double phi = phi_average(u, center, r);
    const double floor = 1e-14 * u.max_abs();
    if (!(phi > floor * floor))
        throw DegenerateCenter("rescale: sphere average of u^2 vanishes at r");
    const double norm = std::sqrt(phi);

    const int mb = m_override > 0 ? m_override : default_blowup_m(r, R, h);
    GridPtr gb = make_grid(g.dim(), mb, R);
    const int n = g.dim();
    const int mid = gb->plane_layer();
    std::vector<double> vals(gb->node_count(), 0.0);

    // Sample the upper half and mirror so the even symmetry is exact.
    const bool mirror = u.symmetric();
    std::array<int, 3> idx{};
    bool done = false;
    while (!done) {
        const int k_lo = mirror ? mid : 0;
        for (int k = k_lo; k < mb; ++k) {
            idx[n - 1] = k;
            const Vec x = gb->coord(idx);
            const Vec p = add(center, scale(r, x));
            vals[gb->index(idx)] = interpolate(u, p) / norm;
        }
        done = true;
        for (int a = n - 2; a >= 0; --a) {
            if (++idx[a] < mb) {
                done = false;
                break;
            }
            idx[a] = 0;
        }
    }
    if (mirror) {
        const std::size_t columns = vals.size() / static_cast<std::size_t>(mb);
        for (std::size_t t = 0; t < columns; ++t) {
            double* col = vals.data() + t * static_cast<std::size_t>(mb);
            for (int k = 0; k < mid; ++k) col[k] = col[2 * mid - k];
        }
    }

    BlowupField out{ScalarField(gb, std::move(vals), mirror)};
    out.source_center = center;
    out.source_radius = r;
    out.outer_radius = R;
    out.normalization = norm;
    return out;
}

namespace {

struct RegularFit {
    double angle = 0.0;  // axis angle inside the plane (3D); 0 or pi in 2D
    double residual = 0.0;
};

Direction plane_axis(double angle, int dim) {
    if (dim == 2) return Direction::make({std::cos(angle), 0.0, 0.0}, 2);
    return Direction::make({std::cos(angle), std::sin(angle), 0.0}, 3);
}

// RMS distance on the unit sphere between the trace and the unit-RMS
// half-plane profile with the given in-plane axis.
double regular_residual_at(const std::vector<SpherePoint>& pts,
                           const std::vector<double>& trace, double angle, int dim) {
    const Direction e = plane_axis(angle, dim);
    double p2 = 0.0, area = 0.0;
    std::vector<double> prof(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        prof[i] = regular_profile(pts[i].x, e);
        p2 += pts[i].w * prof[i] * prof[i];
        area += pts[i].w;
    }
    const double rms = std::sqrt(p2 / area);
    if (!(rms > 0.0)) return std::numeric_limits<double>::infinity();
    double r2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = trace[i] - prof[i] / rms;
        r2 += pts[i].w * d * d;
    }
    return std::sqrt(r2 / area);
}

RegularFit fit_regular(const std::vector<SpherePoint>& pts, const std::vector<double>& trace,
                       int dim) {
    RegularFit best;
    if (dim == 2) {
        const double r0 = regular_residual_at(pts, trace, 0.0, 2);
        const double r1 = regular_residual_at(pts, trace, std::numbers::pi, 2);
        best.angle = r0 <= r1 ? 0.0 : std::numbers::pi;
        best.residual = std::min(r0, r1);
        return best;
    }
    // Coarse scan, then golden-section refinement to 1e-3 rad.
    const int coarse = 96;
    double best_a = 0.0, best_r = std::numeric_limits<double>::infinity();
    for (int i = 0; i < coarse; ++i) {
        const double a = 2.0 * std::numbers::pi * i / coarse;
        const double res = regular_residual_at(pts, trace, a, 3);
        if (res < best_r) {
            best_r = res;
            best_a = a;
        }
    }
    const double step = 2.0 * std::numbers::pi / coarse;
    double lo = best_a - step, hi = best_a + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = regular_residual_at(pts, trace, x1, 3);
    double f2 = regular_residual_at(pts, trace, x2, 3);
    while (hi - lo > 1e-3) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = regular_residual_at(pts, trace, x1, 3);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = regular_residual_at(pts, trace, x2, 3);
        }
    }
    best.angle = 0.5 * (lo + hi);
    best.residual = regular_residual_at(pts, trace, best.angle, 3);
    return best;
}

struct QuadraticFit {
    std::array<double, 2> a{};
    double c = 0.0;
    double residual = 0.0;
};

// Least squares over the sphere trace in the basis x_i^2 - x_n^2, i < n,
// with the nonnegativity constraint handled by clamping the active set.
QuadraticFit fit_quadratic(const std::vector<SpherePoint>& pts, const std::vector<double>& trace,
                           int dim) {
    const int k = dim - 1;
    double area = 0.0;
    std::vector<std::array<double, 2>> basis(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double xn2 = pts[i].x[dim - 1] * pts[i].x[dim - 1];
        for (int a = 0; a < k; ++a) basis[i][a] = pts[i].x[a] * pts[i].x[a] - xn2;
        area += pts[i].w;
    }
    auto solve_subset = [&](bool use0, bool use1) {
        std::array<double, 2> coef{0.0, 0.0};
        double g00 = 0, g01 = 0, g11 = 0, b0 = 0, b1 = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double w = pts[i].w;
            if (use0) {
                g00 += w * basis[i][0] * basis[i][0];
                b0 += w * basis[i][0] * trace[i];
            }
            if (use1) {
                g11 += w * basis[i][1] * basis[i][1];
                b1 += w * basis[i][1] * trace[i];
            }
            if (use0 && use1) g01 += w * basis[i][0] * basis[i][1];
        }
        if (use0 && use1) {
            const double det = g00 * g11 - g01 * g01;
            coef[0] = (b0 * g11 - b1 * g01) / det;
            coef[1] = (b1 * g00 - b0 * g01) / det;
        } else if (use0 && g00 > 0.0) {
            coef[0] = b0 / g00;
        } else if (use1 && g11 > 0.0) {
            coef[1] = b1 / g11;
        }
        return coef;
    };

    std::array<double, 2> coef{};
    if (k == 1) {
        coef = solve_subset(true, false);
        coef[0] = std::max(0.0, coef[0]);
    } else {
        coef = solve_subset(true, true);
        if (coef[0] < 0.0 || coef[1] < 0.0) {
            const auto only0 = solve_subset(true, false);
            const auto only1 = solve_subset(false, true);
            coef = {std::max(0.0, only0[0]), 0.0};
            std::array<double, 2> alt{0.0, std::max(0.0, only1[1])};
            auto rss = [&](const std::array<double, 2>& cf) {
                double s = 0.0;
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    const double fit = cf[0] * basis[i][0] + cf[1] * basis[i][1];
                    const double d = trace[i] - fit;
                    s += pts[i].w * d * d;
                }
                return s;
            };
            if (rss(alt) < rss(coef)) coef = alt;
        }
    }

    QuadraticFit out;
    out.a = coef;
    out.c = coef[0] + coef[1];
    double r2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double fit = coef[0] * basis[i][0] + coef[1] * basis[i][1];
        const double d = trace[i] - fit;
        r2 += pts[i].w * d * d;
    }
    out.residual = std::sqrt(r2 / area);
    return out;
}

}  // namespace

BlowupClassification fit_profile(const BlowupField& v, const ClassifierOptions& opts) {
    const Grid& g = v.field.grid();
    const int n = g.dim();
    const double rms = sphere_rms(v.field, 1.0);
    if (std::abs(rms - 1.0) > 5e-3)
        throw InvalidArgument("fit_profile: blow-up field is not normalized on the unit sphere");

    BlowupClassification out;

    // The mu fit only uses [8 h_b, R/4]; keep the ladder short.
    std::vector<double> radii;
    const double h_b = g.spacing();
    for (double r = 4.0 * h_b; r <= 0.25 * g.half_width() + 2.0 * h_b; r += h_b)
        radii.push_back(r);
    const FrequencyReport freq = frequency_profile(v.field, Vec{}, radii);
    if (!freq.mu.valid)
        throw InsufficientData("fit_profile: mu estimate failed on the blow-up grid");
    out.mu = freq.mu.mu;

    const auto pts = sphere_quadrature(n, Vec{}, 1.0, sphere_point_count(n, 1.0, g.spacing()));
    std::vector<double> trace(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) trace[i] = interpolate(v.field, pts[i].x);

    const RegularFit reg = fit_regular(pts, trace, n);
    out.axis = plane_axis(reg.angle, n);
    out.regular_residual = reg.residual;

    const QuadraticFit quad = fit_quadratic(pts, trace, n);
    out.quad_a = quad.a;
    out.quad_c = quad.c;
    out.quad_residual = quad.residual;

    const bool regular_ok = out.mu >= 1.5 - opts.delta_mu && out.mu <= 2.0 - opts.delta_mu &&
                            reg.residual <= opts.rho_fit;
    const bool quad_ok = std::abs(out.mu - 2.0) <= opts.delta_mu && quad.residual <= opts.rho_fit;
    if (regular_ok) {
        out.cls = ProfileClass::Regular;
        out.residual = reg.residual;
    } else if (quad_ok) {
        out.cls = ProfileClass::DegenerateQuadratic;
        out.residual = quad.residual;
    } else {
        out.cls = ProfileClass::Other;
        out.residual = std::min(reg.residual, quad.residual);
    }

    out.convexity_min = convexity_check(v);
    std::optional<Direction> axis;
    if (out.cls == ProfileClass::Regular) axis = out.axis;
    out.cone_margin = cone_bound_check(v, 1.0, 0.25, axis);
    return out;
}

double convexity_check(const BlowupField& v) {
    const Grid& g = v.field.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const double h = g.spacing();
    const auto& vals = v.field.values();

    double mn = std::numeric_limits<double>::infinity();

    // Axis directions: nodal stencils.
    for (int a = 0; a < n - 1; ++a) {
        std::size_t stride = 1;
        for (int b = n - 1; b > a; --b) stride *= static_cast<std::size_t>(m);
        std::array<int, 3> idx{};
        for (int b = 0; b < n; ++b) idx[b] = 1;
        bool done = false;
        while (!done) {
            const std::size_t f = g.index(idx);
            const double dd = (vals[f + stride] - 2.0 * vals[f] + vals[f - stride]) / (h * h);
            mn = std::min(mn, dd);
            done = true;
            for (int b = n - 1; b >= 0; --b) {
                if (++idx[b] <= m - 2) {
                    done = false;
                    break;
                }
                idx[b] = 1;
            }
        }
    }

    // In-plane diagonals (3D), interpolated stencils.
    if (n == 3) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const Direction diags[2] = {
            Direction::make({inv_sqrt2, inv_sqrt2, 0.0}, 3),
            Direction::make({inv_sqrt2, -inv_sqrt2, 0.0}, 3),
        };
        std::array<int, 3> idx{1, 1, 1};
        bool done = false;
        while (!done) {
            const Vec p = g.coord(idx);
            for (const auto& d : diags) mn = std::min(mn, second_difference(v.field, p, d));
            done = true;
            for (int b = n - 1; b >= 0; --b) {
                if (++idx[b] <= m - 2) {
                    done = false;
                    break;
                }
                idx[b] = 1;
            }
        }
    }
    return mn;
}

double cone_bound_check(const BlowupField& v, double alpha, double eta,
                        const std::optional<Direction>& axis_opt) {
    if (!(alpha >= 0.5 && alpha <= 1.0))
        throw InvalidArgument("cone_bound_check: alpha must lie in [1/2, 1]");
    if (!(eta > 0.0 && eta < 0.5))
        throw InvalidArgument("cone_bound_check: eta must lie in (0, 1/2)");
    const Grid& g = v.field.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const Direction axis = axis_opt ? *axis_opt : Direction::axis(n - 2, n);

    std::vector<Direction> dirs;
    const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    if (n == 2 || beta == 0.0) {
        dirs.push_back(axis);
    } else {
        // In-plane unit vector orthogonal to the axis.
        const Vec perp{-axis.unit[1], axis.unit[0], 0.0};
        dirs.push_back(Direction::make(add(scale(alpha, axis.unit), scale(beta, perp)), n));
        dirs.push_back(Direction::make(sub(scale(alpha, axis.unit), scale(beta, perp)), n));
    }

    const double ball = 5.0 / 6.0;
    double margin = std::numeric_limits<double>::infinity();
    std::array<int, 3> idx{};
    for (int b = 0; b < n; ++b) idx[b] = 1;
    bool done = false;
    while (!done) {
        const Vec p = g.coord(idx);
        if (norm(p) <= ball && std::abs(p[n - 1]) >= eta) {
            for (const auto& d : dirs)
                margin = std::min(margin, directional_derivative(v.field, p, d));
        }
        done = true;
        for (int b = n - 1; b >= 0; --b) {
            if (++idx[b] <= m - 2) {
                done = false;
                break;
            }
            idx[b] = 1;
        }
    }
    return margin / std::sqrt(eta);
}

MultiScaleClassification classify_across_scales(const ScalarField& u, const Vec& center,
                                                std::span<const double> radii, double R,
                                                const ClassifierOptions& opts) {
    MultiScaleClassification out;
    for (double r : radii) {
        const BlowupField v = rescale(u, center, r, R);
        out.per_radius.push_back(fit_profile(v, opts));
        out.radii.push_back(r);
    }
    if (out.per_radius.empty()) throw InsufficientData("classify_across_scales: no radii");
    out.stable = true;
    for (const auto& c : out.per_radius)
        if (c.cls != out.per_radius.front().cls) out.stable = false;
    out.cls = out.per_radius.front().cls;
    return out;
}

}  // namespace signorini
