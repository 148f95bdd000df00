#include "signorini/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "signorini/errors.hpp"

namespace signorini {

namespace {

std::size_t plane_flat(const Grid& g, int i, int j) {
    // Tangential indices row-major; j unused in 2D.
    return g.dim() == 2 ? static_cast<std::size_t>(i)
                        : static_cast<std::size_t>(i) * g.nodes_per_axis() + j;
}

}  // namespace

bool ContactSet::empty() const {
    return std::none_of(mask.begin(), mask.end(), [](std::uint8_t b) { return b != 0; });
}

bool ContactSet::full() const {
    return std::all_of(mask.begin(), mask.end(), [](std::uint8_t b) { return b != 0; });
}

bool ContactSet::contact_at(const std::array<int, 3>& t) const {
    return mask[plane_flat(*grid, t[0], t[1])] != 0;
}

ContactSet extract_contact(const ScalarField& u, double tol) {
    if (!u.symmetric())
        throw InvalidArgument("extract_contact: field must be symmetric about the plane");
    const Grid& g = u.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    if (tol < 0.0) tol = g.spacing() * u.max_abs();

    ContactSet c;
    c.grid = u.grid_ptr();
    c.tol = tol;
    std::size_t count = 1;
    for (int a = 0; a < n - 1; ++a) count *= static_cast<std::size_t>(m);
    c.mask.resize(count);
    c.plane_values.resize(count);

    std::array<int, 3> idx{};
    idx[n - 1] = mid;
    for (std::size_t t = 0; t < count; ++t) {
        if (n == 2) {
            idx[0] = static_cast<int>(t);
        } else {
            idx[0] = static_cast<int>(t / m);
            idx[1] = static_cast<int>(t % m);
        }
        const double v = u.at(idx);
        c.plane_values[t] = v;
        c.mask[t] = v <= tol ? 1 : 0;
    }
    return c;
}

FreeBoundaryResult extract_free_boundary(const ContactSet& c) {
    if (c.empty() || c.full())
        throw NoFreeBoundary("extract_free_boundary: contact mask is empty or full");
    const Grid& g = *c.grid;
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const double h = g.spacing();

    FreeBoundaryResult out;

    auto mask1 = [&](int i, int j) { return c.mask[plane_flat(g, i, j)] != 0; };
    auto trusted_index = [&](int i) { return i >= 2 && i <= m - 3; };

    if (n == 2) {
        for (int i = 0; i + 1 < m; ++i) {
            const bool a = mask1(i, 0), b = mask1(i + 1, 0);
            if (a != b) {
                out.interface_cells.push_back({i, 0});
                out.cell_trusted.push_back(trusted_index(i) && trusted_index(i + 1));
                // Sub-grid crossing of the plane trace through the tolerance.
                const double va = c.plane_values[plane_flat(g, i, 0)];
                const double vb = c.plane_values[plane_flat(g, i + 1, 0)];
                const double x = g.axis_coord(i) + h * (c.tol - va) / (vb - va);
                out.boundary_points.push_back({x, 0.0, 0.0});
                out.point_trusted.push_back(out.cell_trusted.back());
            }
        }
        out.graph_available = false;
        return out;
    }

    // Interface cells over the tangential cell lattice.
    for (int i = 0; i + 1 < m; ++i) {
        for (int j = 0; j + 1 < m; ++j) {
            const bool c00 = mask1(i, j), c01 = mask1(i, j + 1);
            const bool c10 = mask1(i + 1, j), c11 = mask1(i + 1, j + 1);
            const bool any = c00 || c01 || c10 || c11;
            const bool all = c00 && c01 && c10 && c11;
            if (any && !all) {
                out.interface_cells.push_back({i, j});
                out.cell_trusted.push_back(trusted_index(i) && trusted_index(i + 1) &&
                                           trusted_index(j) && trusted_index(j + 1));
            }
        }
    }

    // Graph x_{n-1} = f(x_1): one crossing of the mask per transverse line.
    out.graph.resize(m);
    int valid = 0;
    for (int i = 0; i < m; ++i) {
        GraphSample& s = out.graph[i];
        s.t = g.axis_coord(i);
        s.trusted = trusted_index(i);
        int transitions = 0, at = -1;
        for (int j = 0; j + 1 < m; ++j) {
            if (mask1(i, j) != mask1(i, j + 1)) {
                ++transitions;
                at = j;
            }
        }
        if (transitions == 1) {
            const double va = c.plane_values[plane_flat(g, i, at)];
            const double vb = c.plane_values[plane_flat(g, i, at + 1)];
            s.f = g.axis_coord(at) + h * (c.tol - va) / (vb - va);
            s.valid = true;
            ++valid;
            s.trusted = s.trusted && trusted_index(at) && trusted_index(at + 1);
            out.boundary_points.push_back({s.t, s.f, 0.0});
            out.point_trusted.push_back(s.trusted);
        } else if (transitions > 1) {
            s.multi_crossing = true;
        }
    }
    out.graph_available = valid >= 2;
    if (out.graph_available) {
        // Trusted pairs only; the collar near the box edge is distorted by
        // the pinned boundary data.
        double lip = 0.0;
        for (int i = 0; i + 1 < m; ++i) {
            const auto& a = out.graph[i];
            const auto& b = out.graph[i + 1];
            if (a.valid && b.valid && a.trusted && b.trusted)
                lip = std::max(lip, std::abs(b.f - a.f) / h);
        }
        out.lipschitz = lip;
    }
    return out;
}

std::vector<Vec> subgrid_boundary_points(const ScalarField& u, double zero_tol) {
    const Grid& g = u.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const double h = g.spacing();
    std::vector<Vec> points;

    auto scan_line = [&](int i) {
        std::array<int, 3> idx{};
        idx[n - 1] = mid;
        if (n == 3) idx[0] = i;
        auto val = [&](int j) {
            idx[n - 2] = j;
            return u.at(idx);
        };
        int last0 = -1;
        for (int j = 0; j + 1 < m; ++j)
            if (val(j) <= zero_tol && val(j + 1) > zero_tol) last0 = j;
        if (last0 < 2 || last0 > m - 4) return;  // untrusted near the box edge
        const double u1 = val(last0 + 1);
        const double u2 = val(last0 + 2);
        double offset = 0.5 * h;  // midpoint fallback
        if (u1 > zero_tol && u2 > u1) {
            // u(d) ~ lambda d^{3/2}: d = h / ((u2/u1)^{2/3} - 1).
            const double q = std::pow(u2 / u1, 2.0 / 3.0) - 1.0;
            if (q > 0.0) {
                const double d = h / q;
                if (d > 0.0 && d < 2.0 * h) offset = h - d;
            }
        }
        Vec p{};
        if (n == 3) p[0] = g.axis_coord(i);
        p[n - 2] = g.axis_coord(last0) + offset;
        points.push_back(p);
    };

    if (n == 2) {
        scan_line(0);
    } else {
        for (int i = 2; i <= m - 3; ++i) scan_line(i);
    }
    return points;
}

double cone_monotonicity(const ScalarField& u, double theta, double region_radius,
                         const Vec& center, const Direction& axis) {
    if (!(theta > 0.0 && theta <= 0.5 * std::numbers::pi))
        throw InvalidArgument("cone_monotonicity: theta must lie in (0, pi/2]");
    if (!axis.tangential)
        throw InvalidArgument("cone_monotonicity: axis must be tangential");
    const Grid& g = u.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();

    std::vector<Direction> dirs{axis};
    if (n == 3) {
        const Vec perp{-axis.unit[1], axis.unit[0], 0.0};
        const double c = std::cos(theta), s = std::sin(theta);
        dirs.push_back(Direction::make(add(scale(c, axis.unit), scale(s, perp)), 3));
        dirs.push_back(Direction::make(sub(scale(c, axis.unit), scale(s, perp)), 3));
    }

    double mn = std::numeric_limits<double>::infinity();
    std::array<int, 3> idx{};
    idx[n - 1] = mid;
    // Plane probes excluding the untrusted 2h collar at the lateral edges.
    auto visit = [&](int i, int j) {
        idx[0] = i;
        if (n == 3) idx[1] = j;
        const Vec p = g.coord(idx);
        if (distance(p, center) > region_radius) return;
        for (const auto& d : dirs) mn = std::min(mn, directional_derivative(u, p, d));
    };
    if (n == 2) {
        for (int i = 2; i <= m - 3; ++i) visit(i, 0);
    } else {
        for (int i = 2; i <= m - 3; ++i)
            for (int j = 2; j <= m - 3; ++j) visit(i, j);
    }
    return mn;
}

BarrierReport barrier_check(const ScalarField& hfield, const ContactSet* contact, const Vec& z,
                            double delta, double sigma) {
    const Grid& g = hfield.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const double h = g.spacing();
    const double half_height = 1.0 / (4.0 * (n - 1));
    const double radius = 1.0 / 3.0;

    // Q must sit inside the grid with room for interpolation stencils.
    for (int a = 0; a < n - 1; ++a)
        if (std::abs(z[a]) + radius > g.half_width() - h)
            throw InvalidArgument("barrier_check: Q leaves the grid");
    if (half_height > g.half_width() - h)
        throw InvalidArgument("barrier_check: Q leaves the grid");

    auto P = [&](const Vec& x) {
        double t2 = 0.0;
        for (int a = 0; a < n - 1; ++a) t2 += (x[a] - z[a]) * (x[a] - z[a]);
        return t2 - (n - 1) * x[n - 1] * x[n - 1];
    };

    BarrierReport rep;

    // Measured floor of h on the high part of Q (the comparison constant c0).
    {
        double c0 = std::numeric_limits<double>::infinity();
        std::array<int, 3> idx{};
        bool done = false;
        while (!done) {
            const Vec x = g.coord(idx);
            bool in_q = std::abs(x[n - 1]) <= half_height;
            double t2 = 0.0;
            for (int a = 0; a < n - 1; ++a) t2 += (x[a] - z[a]) * (x[a] - z[a]);
            in_q = in_q && t2 <= radius * radius;
            if (in_q && std::abs(x[n - 1]) >= 0.5 * half_height)
                c0 = std::min(c0, hfield[g.index(idx)]);
            done = true;
            for (int a = n - 1; a >= 0; --a) {
                if (++idx[a] < m) {
                    done = false;
                    break;
                }
                idx[a] = 0;
            }
        }
        rep.c0 = std::isfinite(c0) ? c0 : 0.0;
    }
    rep.delta = delta > 0.0 ? delta : 16.0 * (n - 1) * std::max(rep.c0, 0.0);

    auto v_at = [&](const Vec& x) { return interpolate(hfield, x) + rep.delta * P(x); };

    double min_boundary = std::numeric_limits<double>::infinity();
    double min_strip = std::numeric_limits<double>::infinity();
    auto take = [&](const Vec& x) {
        const double v = v_at(x);
        min_boundary = std::min(min_boundary, v);
        if (std::abs(x[n - 1]) < sigma) min_strip = std::min(min_strip, v);
    };

    const int n_levels = std::max(9, static_cast<int>(std::ceil(2.0 * half_height / h)) + 1);
    if (n == 2) {
        // Lateral sides x' = z' +- 1/3 and the two caps.
        for (int k = 0; k < n_levels; ++k) {
            const double xn = -half_height + 2.0 * half_height * k / (n_levels - 1);
            take({z[0] - radius, xn, 0.0});
            take({z[0] + radius, xn, 0.0});
        }
        const int n_side = std::max(9, static_cast<int>(std::ceil(2.0 * radius / h)) + 1);
        for (int k = 0; k < n_side; ++k) {
            const double x0 = z[0] - radius + 2.0 * radius * k / (n_side - 1);
            take({x0, -half_height, 0.0});
            take({x0, half_height, 0.0});
        }
    } else {
        const int n_ang = std::max(64, static_cast<int>(std::ceil(2.0 * std::numbers::pi * radius / h)));
        for (int a = 0; a < n_ang; ++a) {
            const double th = 2.0 * std::numbers::pi * a / n_ang;
            const double x0 = z[0] + radius * std::cos(th);
            const double x1 = z[1] + radius * std::sin(th);
            for (int k = 0; k < n_levels; ++k) {
                const double xn = -half_height + 2.0 * half_height * k / (n_levels - 1);
                take({x0, x1, xn});
            }
        }
        // Caps sampled on polar rings.
        const int n_rad = std::max(5, static_cast<int>(std::ceil(radius / h)) + 1);
        for (int rr = 0; rr < n_rad; ++rr) {
            const double rad = radius * rr / (n_rad - 1);
            const int n_th = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * rad / h)));
            for (int a = 0; a < n_th; ++a) {
                const double th = 2.0 * std::numbers::pi * a / n_th;
                const double x0 = z[0] + rad * std::cos(th);
                const double x1 = z[1] + rad * std::sin(th);
                take({x0, x1, -half_height});
                take({x0, x1, half_height});
            }
        }
    }
    rep.min_boundary = min_boundary;
    rep.min_strip = std::isfinite(min_strip) ? min_strip : 0.0;

    // Contact part of Q: v = h + delta P over contact nodes (P >= 0 there).
    double min_contact = std::numeric_limits<double>::infinity();
    if (contact) {
        std::array<int, 3> idx{};
        idx[n - 1] = mid;
        const std::size_t count = contact->plane_count();
        for (std::size_t t = 0; t < count; ++t) {
            if (!contact->mask[t]) continue;
            if (n == 2) {
                idx[0] = static_cast<int>(t);
            } else {
                idx[0] = static_cast<int>(t / m);
                idx[1] = static_cast<int>(t % m);
            }
            const Vec x = g.coord(idx);
            double t2 = 0.0;
            for (int a = 0; a < n - 1; ++a) t2 += (x[a] - z[a]) * (x[a] - z[a]);
            if (t2 > radius * radius) continue;
            min_contact = std::min(min_contact, hfield[g.index(idx)] + rep.delta * P(x));
        }
    }
    rep.min_contact = std::isfinite(min_contact) ? min_contact : 0.0;

    // Discrete Laplacian of P vanishes identically; verify at interior nodes.
    {
        const ScalarField pf = sample(hfield.grid_ptr(), [&](const Vec& x) { return P(x); });
        double defect = 0.0;
        std::array<int, 3> idx{};
        for (int a = 0; a < n; ++a) idx[a] = 1;
        bool done = false;
        while (!done) {
            defect = std::max(defect, std::abs(node_laplacian(pf, idx)));
            done = true;
            for (int a = n - 1; a >= 0; --a) {
                if (++idx[a] <= m - 2) {
                    done = false;
                    break;
                }
                idx[a] = 1;
            }
        }
        rep.lap_defect = defect;
    }

    const double tol = 1e-10 * (1.0 + hfield.max_abs() + rep.delta);
    rep.pass = rep.min_boundary >= -tol && rep.min_contact >= -tol;
    return rep;
}

QuotientReport quotient_diagnostic(const ScalarField& u, const Direction& tau, double band,
                                   const Direction& axis, const ContactSet& contact) {
    const Grid& g = u.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const double h = g.spacing();
    if (!tau.tangential || !axis.tangential)
        throw InvalidArgument("quotient_diagnostic: directions must be tangential");

    const FreeBoundaryResult fb = extract_free_boundary(contact);

    struct Probe {
        Vec p;
        double q;
    };
    std::vector<Probe> probes;

    // Scale for the denominator cutoff: max |grad u| over candidate probes.
    double grad_scale = 0.0;
    std::vector<std::pair<Vec, double>> candidates;  // position, distance to F
    {
        std::array<int, 3> idx{};
        idx[n - 1] = mid;
        auto visit = [&](int i, int j) {
            idx[0] = i;
            if (n == 3) idx[1] = j;
            const std::size_t flat_t =
                n == 2 ? static_cast<std::size_t>(i) : static_cast<std::size_t>(i) * m + j;
            if (contact.mask[flat_t]) return;  // outside Lambda only
            const Vec p = g.coord(idx);
            double dist = std::numeric_limits<double>::infinity();
            for (const auto& bp : fb.boundary_points) dist = std::min(dist, distance(p, bp));
            if (dist > band) return;
            candidates.emplace_back(p, dist);
            grad_scale = std::max(grad_scale, norm(gradient(u, p)));
        };
        if (n == 2) {
            for (int i = 2; i <= m - 3; ++i) visit(i, 0);
        } else {
            for (int i = 2; i <= m - 3; ++i)
                for (int j = 2; j <= m - 3; ++j) visit(i, j);
        }
    }

    const double eps_den = 1e-3 * grad_scale;
    for (const auto& [p, dist] : candidates) {
        const double den = directional_derivative(u, p, axis);
        if (std::abs(den) < eps_den) continue;
        probes.push_back({p, directional_derivative(u, p, tau) / den});
    }
    if (probes.size() < 8)
        throw InsufficientData("quotient_diagnostic: denominator below threshold at nearly all probes");

    QuotientReport rep;
    rep.probes = static_cast<int>(probes.size());
    rep.q_low = std::numeric_limits<double>::infinity();
    rep.q_high = -std::numeric_limits<double>::infinity();
    for (const auto& pr : probes) {
        rep.q_low = std::min(rep.q_low, pr.q);
        rep.q_high = std::max(rep.q_high, pr.q);
    }

    // Cumulative oscillation at geometric pair distances in [2h, band].
    std::vector<double> dvals;
    for (double d = 2.0 * h; d <= band * (1.0 + 1e-12); d *= std::numbers::sqrt2)
        dvals.push_back(d);
    if (dvals.size() < 3)
        throw InsufficientData("quotient_diagnostic: band too narrow for the oscillation fit");
    std::vector<double> osc(dvals.size(), 0.0);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
            const double d = distance(probes[i].p, probes[j].p);
            if (d > dvals.back()) continue;
            const double dq = std::abs(probes[i].q - probes[j].q);
            const auto it = std::lower_bound(dvals.begin(), dvals.end(), d * (1.0 - 1e-12));
            const std::size_t bin = static_cast<std::size_t>(it - dvals.begin());
            if (bin < osc.size()) osc[bin] = std::max(osc[bin], dq);
        }
    }
    for (std::size_t k = 1; k < osc.size(); ++k) osc[k] = std::max(osc[k], osc[k - 1]);
    rep.oscillation = osc.back();

    // A quotient flat at grid resolution satisfies the Hoelder bound for
    // every exponent; report it as constant rather than fitting noise.
    double q_scale = 0.0;
    {
        std::vector<double> absq;
        absq.reserve(probes.size());
        for (const auto& pr : probes) absq.push_back(std::abs(pr.q));
        std::nth_element(absq.begin(), absq.begin() + absq.size() / 2, absq.end());
        q_scale = absq[absq.size() / 2];
    }
    if (rep.oscillation <= 0.05 * std::max(q_scale, 1e-30)) {
        rep.constant_quotient = true;
        rep.alpha = std::numeric_limits<double>::infinity();
        rep.residual = 0.0;
        return rep;
    }

    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < osc.size(); ++k) {
        if (osc[k] > 0.0) {
            xs.push_back(std::log(dvals[k]));
            ys.push_back(std::log(osc[k]));
        }
    }
    if (xs.size() < 3) throw InsufficientData("quotient_diagnostic: too few oscillation scales");
    const std::size_t cnt = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < cnt; ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    const double det = cnt * sxx - sx * sx;
    const double slope = (cnt * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / cnt;
    double rss = 0.0;
    for (std::size_t k = 0; k < cnt; ++k) {
        const double e = ys[k] - (intercept + slope * xs[k]);
        rss += e * e;
    }
    rep.alpha = slope;
    rep.residual = std::sqrt(rss / cnt);
    return rep;
}

}  // namespace signorini
