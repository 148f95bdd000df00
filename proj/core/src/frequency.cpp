#include "signorini/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "signorini/errors.hpp"
#include "signorini/quadrature.hpp"

namespace signorini {

namespace {

// V_r is accumulated radially: V(r) = int_0^r A(rho) drho with
// A(rho) = int_{dB_rho} |grad u|^2 dsigma by the same spherical quadrature
// as S_r. Cell sums (hard or smoothed indicators) carry (h/r)^2 lattice
// noise that shows up as spurious non-monotone wiggles of D_r at small r;
// the cumulative form is smooth in r. Rungs are spaced h/4.
struct ShellTable {
    double dr = 0.0;
    std::vector<double> area;  // A at rung k (rung 0 is the center, A = 0)
    std::vector<double> vcum;  // trapezoid prefix of A at the rungs
};

ShellTable build_shell_table(const ScalarField& u, const Vec& center, double r_max) {
    const Grid& g = u.grid();
    const int n = g.dim();
    const double h = g.spacing();
    ShellTable t;
    t.dr = 0.25 * h;
    const int rungs = static_cast<int>(std::ceil(r_max / t.dr)) + 1;
    t.area.resize(rungs + 1, 0.0);
    t.vcum.resize(rungs + 1, 0.0);
    for (int k = 1; k <= rungs; ++k) {
        const double rho = k * t.dr;
        const auto pts = sphere_quadrature(n, center, rho, sphere_point_count(n, rho, h));
        double a = 0.0;
        for (const auto& q : pts) {
            const Vec grad = gradient(u, q.x);
            a += q.w * dot(grad, grad);
        }
        t.area[k] = a;
        t.vcum[k] = t.vcum[k - 1] + 0.5 * t.dr * (t.area[k - 1] + t.area[k]);
    }
    return t;
}

double volume_from_table(const ShellTable& t, double r) {
    const int k = std::min(static_cast<int>(r / t.dr), static_cast<int>(t.area.size()) - 2);
    const double r_k = k * t.dr;
    const double frac = (r - r_k) / t.dr;
    const double a_r = t.area[k] + frac * (t.area[k + 1] - t.area[k]);
    return t.vcum[k] + 0.5 * (r - r_k) * (t.area[k] + a_r);
}

double surface_u2(const ScalarField& u, const Vec& center, double r) {
    const Grid& g = u.grid();
    const auto pts = sphere_quadrature(g.dim(), center, r, sphere_point_count(g.dim(), r, g.spacing()));
    double S = 0.0;
    for (const auto& q : pts) {
        const double v = interpolate(u, q.x);
        S += q.w * v * v;
    }
    return S;
}

RadiusSample make_sample(const ScalarField& u, const ShellTable& table, const Vec& center,
                         double r, double degenerate_floor) {
    RadiusSample s{};
    s.r = r;
    s.S = surface_u2(u, center, r);
    s.V = volume_from_table(table, r);
    s.phi_avg = s.S / sphere_area(u.grid().dim(), r);
    s.degenerate = s.S <= degenerate_floor * sphere_area(u.grid().dim(), r);
    s.D = s.degenerate ? std::numeric_limits<double>::quiet_NaN() : r * s.V / s.S;
    return s;
}

double degenerate_floor_for(const ScalarField& u) {
    const double scale = 1e-14 * u.max_abs();
    return scale * scale;
}

}  // namespace

double FrequencyReport::max_frequency() const {
    double m = 0.0;
    for (const auto& s : samples)
        if (!s.degenerate) m = std::max(m, s.D);
    return m;
}

double FrequencyReport::min_frequency() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : samples)
        if (!s.degenerate) m = std::min(m, s.D);
    return m;
}

void check_radius(const Grid& g, const Vec& center, double r) {
    const double h = g.spacing();
    const double slack = 1e-12 * g.half_width();
    if (r < 4.0 * h - slack)
        throw InvalidRadius("radius " + std::to_string(r) + " below 4h = " + std::to_string(4 * h));
    const double r_max = g.boundary_distance(center) - 2.0 * h;
    if (r > r_max + slack)
        throw InvalidRadius("radius " + std::to_string(r) + " exceeds boundary_distance - 2h = " +
                            std::to_string(r_max));
}

std::vector<double> default_radii(const Grid& g, const Vec& center, double step_factor) {
    const double h = g.spacing();
    const double r_max = g.boundary_distance(center) - 2.0 * h;
    std::vector<double> radii;
    for (double r = 4.0 * h; r <= r_max + 1e-12; r += step_factor * h) radii.push_back(r);
    return radii;
}

double phi_average(const ScalarField& u, const Vec& center, double r) {
    check_radius(u.grid(), center, r);
    return surface_u2(u, center, r) / sphere_area(u.grid().dim(), r);
}

BallIntegrals ball_integrals(const ScalarField& u, const Vec& center, double r) {
    check_radius(u.grid(), center, r);
    const ShellTable table = build_shell_table(u, center, r);
    BallIntegrals out{};
    out.S = surface_u2(u, center, r);
    out.V = volume_from_table(table, r);
    out.phi_avg = out.S / sphere_area(u.grid().dim(), r);
    return out;
}

FrequencyReport frequency_profile(const ScalarField& u, const Vec& center,
                                  std::span<const double> radii) {
    const Grid& g = u.grid();
    if (radii.empty()) throw InvalidRadius("frequency_profile: empty radius list");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        check_radius(g, center, radii[i]);
        if (i > 0 && radii[i] <= radii[i - 1])
            throw InvalidRadius("frequency_profile: radii must be strictly increasing");
    }

    FrequencyReport report;
    report.center = center;
    report.dim = g.dim();
    report.grid_h = g.spacing();
    report.grid_half_width = g.half_width();
    report.u_center = interpolate(u, center);
    report.hypothesis_violated = std::abs(report.u_center) > g.spacing() * u.max_abs();

    const ShellTable table = build_shell_table(u, center, radii.back());
    const double floor = degenerate_floor_for(u);
    report.samples.reserve(radii.size());
    for (double r : radii) report.samples.push_back(make_sample(u, table, center, r, floor));

    report.degenerate =
        std::all_of(report.samples.begin(), report.samples.end(),
                    [](const RadiusSample& s) { return s.degenerate; });
    if (!report.degenerate) {
        try {
            report.mu = estimate_mu(report);
        } catch (const InsufficientData&) {
            report.mu.valid = false;
        }
    }
    return report;
}

MuEstimate estimate_mu(const FrequencyReport& report) {
    if (report.samples.empty()) throw InsufficientData("estimate_mu: empty report");
    const double lo = std::max(8.0 * report.grid_h, report.samples.front().r);
    const double hi = std::min(0.25 * report.grid_half_width, report.samples.back().r);
    std::vector<double> xs, ys;
    for (const auto& s : report.samples) {
        const double slack = 1e-12;
        if (s.r < lo - slack || s.r > hi + slack) continue;
        if (s.degenerate || !(s.phi_avg > 0.0)) continue;
        xs.push_back(std::log(s.r));
        ys.push_back(std::log(s.phi_avg));
    }
    if (xs.size() < 4)
        throw InsufficientData("estimate_mu: fewer than 4 usable radii in [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "]");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        rss += e * e;
    }
    MuEstimate est;
    est.valid = true;
    est.mu = 0.5 * slope;
    est.window_lo = lo;
    est.window_hi = hi;
    est.residual = std::sqrt(rss / n);
    est.used = static_cast<int>(n);
    return est;
}

MonotonicityReport monotonicity_report(const FrequencyReport& report, double eps) {
    MonotonicityReport out;
    std::vector<const RadiusSample*> ok;
    for (const auto& s : report.samples)
        if (!s.degenerate && s.phi_avg > 0.0) ok.push_back(&s);
    if (ok.size() < 2) return out;

    double max_d = 0.0, min_d = std::numeric_limits<double>::infinity();
    for (const auto* s : ok) {
        max_d = std::max(max_d, s->D);
        min_d = std::min(min_d, s->D);
    }
    out.tol = 5e-3 * (1.0 + max_d);

    // The homogeneity mu is the r -> 0 limit of the monotone D_r, i.e. its
    // infimum; the windowed least-squares estimate overshoots it for
    // non-homogeneous fields, so the monotonicity baseline takes the min.
    double mu = min_d;
    if (report.mu.valid) mu = std::min(mu, report.mu.mu);
    out.mu_used = mu;

    for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
        const double deficit = ok[i]->D - ok[i + 1]->D;
        if (deficit > out.tol)
            out.frequency.push_back({ok[i]->r, ok[i + 1]->r, deficit});
    }

    // r^{-2mu} phi nondecreasing, checked in log form (scale invariant).
    for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
        const double dlogphi = std::log(ok[i + 1]->phi_avg) - std::log(ok[i]->phi_avg);
        const double dlogr = std::log(ok[i + 1]->r) - std::log(ok[i]->r);
        const double deficit = 2.0 * mu * dlogr - dlogphi;
        if (deficit > out.tol) out.phi.push_back({ok[i]->r, ok[i + 1]->r, deficit});
    }

    // Doubling inequality phi(R) <= (R/r)^{2(mu+eps)} phi(r), valid below
    // r0 = sup{r : D_r <= mu + eps}. The envelope exponent uses the fitted
    // mu: the min-D baseline above is dragged down by volume noise at the
    // smallest radii and would tighten the envelope spuriously.
    const double mu_env = report.mu.valid ? report.mu.mu : mu;
    out.mu_doubling = mu_env;
    double r0 = 0.0;
    for (const auto* s : ok)
        if (s->D <= mu_env + eps) r0 = std::max(r0, s->r);
    out.doubling_r0 = r0;
    for (std::size_t i = 0; i < ok.size(); ++i) {
        for (std::size_t j = i + 1; j < ok.size(); ++j) {
            if (ok[j]->r > r0) break;
            const double lhs = std::log(ok[j]->phi_avg) - std::log(ok[i]->phi_avg);
            const double rhs = 2.0 * (mu_env + eps) * (std::log(ok[j]->r) - std::log(ok[i]->r));
            if (lhs > rhs + out.tol) out.doubling.push_back({ok[i]->r, ok[j]->r, lhs - rhs});
        }
    }
    return out;
}

double rellich_defect(const ScalarField& u, const Vec& center, double r) {
    const Grid& g = u.grid();
    check_radius(g, center, r);
    const int n = g.dim();
    const ShellTable table = build_shell_table(u, center, r);
    const double V = volume_from_table(table, r);
    if (!(V > 0.0)) throw DegenerateCenter("rellich_defect: V_r = 0");
    const auto pts = sphere_quadrature(n, center, r, sphere_point_count(n, r, g.spacing()));
    double A = 0.0, B = 0.0;
    for (const auto& q : pts) {
        const Vec grad = gradient(u, q.x);
        const Vec nu = scale(1.0 / r, sub(q.x, center));
        const double gn = dot(grad, nu);
        A += q.w * dot(grad, grad);
        B += q.w * gn * gn;
    }
    // Gauss on B_r scales the unit-ball identity by r on the surface side.
    return std::abs((n - 2) * V - r * (A - 2.0 * B)) / V;
}

}  // namespace signorini
