#include "signorini/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "signorini/errors.hpp"

namespace signorini {

void ProblemSpec::validate() const {
    if (!(relaxation > 0.0 && relaxation < 2.0))
        throw InvalidArgument("ProblemSpec: relaxation factor must lie in (0, 2)");
    if (!(tol_sweep_factor > 0.0) || !(tol_comp_factor > 0.0))
        throw InvalidArgument("ProblemSpec: tolerances must be positive");
    if (max_sweeps < 1) throw InvalidArgument("ProblemSpec: max_sweeps must be >= 1");
    if (!boundary) throw InvalidArgument("ProblemSpec: boundary data missing");
    // Grid constraints are checked by make_grid.
}

namespace {

// Discrete Dirichlet energy of the symmetric field evaluated on the upper
// half only: tangential edges above the plane and all vertical edges count
// twice, tangential edges inside the plane once.
double half_energy(const std::vector<double>& u, int n, int m, int mid, double h) {
    double e = 0.0;
    const std::size_t sy = static_cast<std::size_t>(m);
    if (n == 2) {
        for (int i = 0; i < m; ++i) {
            const std::size_t row = i * sy;
            for (int k = mid; k < m; ++k) {
                const std::size_t f = row + k;
                const double w_t = (k == mid) ? 1.0 : 2.0;
                if (i + 1 < m) {
                    const double d = u[f + sy] - u[f];
                    e += w_t * d * d;
                }
                if (k + 1 < m) {
                    const double d = u[f + 1] - u[f];
                    e += 2.0 * d * d;
                }
            }
        }
        return e;  // h^{n-2} = 1
    }
    const std::size_t sx = static_cast<std::size_t>(m) * m;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const std::size_t row = i * sx + j * sy;
            for (int k = mid; k < m; ++k) {
                const std::size_t f = row + k;
                const double w_t = (k == mid) ? 1.0 : 2.0;
                if (i + 1 < m) {
                    const double d = u[f + sx] - u[f];
                    e += w_t * d * d;
                }
                if (j + 1 < m) {
                    const double d = u[f + sy] - u[f];
                    e += w_t * d * d;
                }
                if (k + 1 < m) {
                    const double d = u[f + 1] - u[f];
                    e += 2.0 * d * d;
                }
            }
        }
    }
    return e * h;
}

double sweep_2d(std::vector<double>& u, int m, int mid, double theta) {
    const std::size_t sy = static_cast<std::size_t>(m);
    double max_update = 0.0;
    for (int i = 1; i + 1 < m; ++i) {
        const std::size_t row = i * sy;
        {
            const std::size_t f = row + mid;
            const double raw = (u[f - sy] + u[f + sy] + 2.0 * u[f + 1]) * 0.25;
            double cand = u[f] + theta * (raw - u[f]);
            if (cand < 0.0) cand = 0.0;
            max_update = std::max(max_update, std::abs(cand - u[f]));
            u[f] = cand;
        }
        for (int k = mid + 1; k + 1 < m; ++k) {
            const std::size_t f = row + k;
            const double raw = (u[f - sy] + u[f + sy] + u[f - 1] + u[f + 1]) * 0.25;
            const double cand = u[f] + theta * (raw - u[f]);
            max_update = std::max(max_update, std::abs(cand - u[f]));
            u[f] = cand;
        }
    }
    return max_update;
}

double sweep_3d(std::vector<double>& u, int m, int mid, double theta) {
    const std::size_t sy = static_cast<std::size_t>(m);
    const std::size_t sx = sy * m;
    const double inv = 1.0 / 6.0;
    double max_update = 0.0;
    for (int i = 1; i + 1 < m; ++i) {
        for (int j = 1; j + 1 < m; ++j) {
            const std::size_t row = i * sx + j * sy;
            {
                const std::size_t f = row + mid;
                const double raw =
                    (u[f - sx] + u[f + sx] + u[f - sy] + u[f + sy] + 2.0 * u[f + 1]) * inv;
                double cand = u[f] + theta * (raw - u[f]);
                if (cand < 0.0) cand = 0.0;
                max_update = std::max(max_update, std::abs(cand - u[f]));
                u[f] = cand;
            }
            for (int k = mid + 1; k + 1 < m; ++k) {
                const std::size_t f = row + k;
                const double raw =
                    (u[f - sx] + u[f + sx] + u[f - sy] + u[f + sy] + u[f - 1] + u[f + 1]) * inv;
                const double cand = u[f] + theta * (raw - u[f]);
                max_update = std::max(max_update, std::abs(cand - u[f]));
                u[f] = cand;
            }
        }
    }
    return max_update;
}

}  // namespace

SolveResult solve(const ProblemSpec& spec) {
    spec.validate();
    GridPtr grid = make_grid(spec.dim, spec.m, spec.half_width);
    const Grid& g = *grid;
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const double h = g.spacing();

    std::vector<double> u(g.node_count(), 0.0);

    // Boundary data on the upper half; the lower half is mirrored at the end.
    double g_max = 0.0, g_sum = 0.0;
    std::size_t g_count = 0;
    {
        std::array<int, 3> idx{};
        idx[n - 1] = mid;
        // Iterate upper-half nodes by walking tangential indices and x_n.
        bool done = false;
        while (!done) {
            for (int k = mid; k < m; ++k) {
                idx[n - 1] = k;
                if (!g.is_boundary(idx)) continue;
                const double val = spec.boundary(g.coord(idx));
                if (!std::isfinite(val))
                    throw SamplingError("solve: non-finite boundary value", g.index(idx));
                u[g.index(idx)] = val;
                g_max = std::max(g_max, std::abs(val));
                g_sum += val;
                ++g_count;
            }
            done = true;
            for (int a = n - 2; a >= 0; --a) {
                if (++idx[a] < m) {
                    done = false;
                    break;
                }
                idx[a] = 0;
            }
        }
    }

    const double scale = g_max > 0.0 ? g_max : 1.0;
    const double eps_sweep = spec.tol_sweep_factor * scale;
    const double eps_comp = spec.tol_comp_factor * h * scale;
    const double g_mean = g_count ? g_sum / static_cast<double>(g_count) : 0.0;

    // Constant initial guess at the boundary mean, projected on the plane.
    {
        std::array<int, 3> idx{};
        bool done = false;
        while (!done) {
            for (int k = mid; k < m; ++k) {
                idx[n - 1] = k;
                if (g.is_boundary(idx)) continue;
                u[g.index(idx)] = (k == mid) ? std::max(0.0, g_mean) : g_mean;
            }
            done = true;
            for (int a = n - 2; a >= 0; --a) {
                if (++idx[a] < m) {
                    done = false;
                    break;
                }
                idx[a] = 0;
            }
        }
    }

    SolveResult result(ScalarField::zeros(grid));
    result.eps_sweep = eps_sweep;
    result.eps_comp = eps_comp;
    result.energy.reserve(256);

    double max_update = std::numeric_limits<double>::infinity();
    int sweep = 0;
    while (sweep < spec.max_sweeps) {
        ++sweep;
        max_update = (n == 2) ? sweep_2d(u, m, mid, spec.relaxation)
                              : sweep_3d(u, m, mid, spec.relaxation);
        result.energy.push_back(half_energy(u, n, m, mid, h));
        result.max_updates.push_back(max_update);
        if (max_update <= eps_sweep) break;
    }
    result.sweeps = sweep;
    result.final_update = max_update;
    result.converged = max_update <= eps_sweep;

    // Mirror the lower half: u(x', -x_n) = u(x', x_n).
    {
        const std::size_t columns = u.size() / static_cast<std::size_t>(m);
        for (std::size_t t = 0; t < columns; ++t) {
            double* col = u.data() + t * static_cast<std::size_t>(m);
            for (int k = 0; k < mid; ++k) col[k] = col[2 * mid - k];
        }
    }

    result.u = ScalarField(grid, std::move(u), true);
    result.complementarity = complementarity_report(result.u);
    return result;
}

ComplementarityReport complementarity_report(const ScalarField& field) {
    const Grid& g = field.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const double h = g.spacing();
    const double contact_eps = 1e-14 * std::max(1.0, field.max_abs());

    ComplementarityReport rep{0.0, 0.0, 0.0};
    std::array<int, 3> idx{};
    idx[n - 1] = mid;
    bool done = false;
    while (!done) {
        bool lateral_boundary = false;
        for (int a = 0; a < n - 1; ++a)
            if (idx[a] == 0 || idx[a] == m - 1) lateral_boundary = true;
        if (!lateral_boundary) {
            const std::size_t f = g.index(idx);
            const double v = field[f];
            const double flux = (field[f + 1] - v) / h;
            rep.max_violation_u = std::max(rep.max_violation_u, -v);
            if (v <= contact_eps)
                rep.max_violation_flux = std::max(rep.max_violation_flux, flux);
            else
                rep.max_violation_product = std::max(rep.max_violation_product, v * std::abs(flux));
        }
        done = true;
        for (int a = n - 2; a >= 0; --a) {
            if (++idx[a] < m) {
                done = false;
                break;
            }
            idx[a] = 0;
        }
    }
    rep.max_violation_u = std::max(rep.max_violation_u, 0.0);
    rep.max_violation_flux = std::max(rep.max_violation_flux, 0.0);
    return rep;
}

namespace {

std::vector<std::array<int, 3>> pair_offsets(int n, int max_norm2) {
    // Lexicographically positive lattice offsets with |delta|^2 <= max_norm2,
    // so each unordered node pair is visited once.
    std::vector<std::array<int, 3>> offsets;
    const int r = static_cast<int>(std::sqrt(static_cast<double>(max_norm2)));
    std::array<int, 3> d{};
    const int lo = -r;
    auto lex_positive = [&](const std::array<int, 3>& v) {
        for (int a = 0; a < n; ++a) {
            if (v[a] > 0) return true;
            if (v[a] < 0) return false;
        }
        return false;
    };
    std::function<void(int)> rec = [&](int a) {
        if (a == n) {
            int n2 = 0;
            for (int b = 0; b < n; ++b) n2 += d[b] * d[b];
            if (n2 > 0 && n2 <= max_norm2 && lex_positive(d)) offsets.push_back(d);
            return;
        }
        for (int v = lo; v <= r; ++v) {
            d[a] = v;
            rec(a + 1);
        }
        d[a] = 0;
    };
    rec(0);
    return offsets;
}

}  // namespace

RegularityDiagnostics regularity_diagnostics(const ScalarField& field) {
    const Grid& g = field.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const int mid = g.plane_layer();
    const double h = g.spacing();
    const double half = 0.5 * g.half_width() + 1e-12;

    int lo = m, hi = -1;
    for (int i = 0; i < m; ++i)
        if (std::abs(g.axis_coord(i)) <= half) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }

    const auto offsets = pair_offsets(n, 16);

    auto in_range = [&](const std::array<int, 3>& idx, int zlo) {
        for (int a = 0; a < n - 1; ++a)
            if (idx[a] < lo || idx[a] > hi) return false;
        return idx[n - 1] >= zlo && idx[n - 1] <= hi;
    };

    // (i) Lipschitz quotient over node pairs at distance <= 4h.
    double lip = 0.0;
    {
        std::array<int, 3> idx{};
        for (int a = 0; a < n; ++a) idx[a] = lo;
        bool done = false;
        while (!done) {
            const double v0 = field.at(idx);
            for (const auto& d : offsets) {
                std::array<int, 3> jdx = idx;
                bool ok = true;
                int n2 = 0;
                for (int a = 0; a < n; ++a) {
                    jdx[a] += d[a];
                    n2 += d[a] * d[a];
                    if (jdx[a] < lo || jdx[a] > hi) ok = false;
                }
                if (!ok) continue;
                const double q = std::abs(field.at(jdx) - v0) / (h * std::sqrt(double(n2)));
                lip = std::max(lip, q);
            }
            done = true;
            for (int a = n - 1; a >= 0; --a) {
                if (++idx[a] <= hi) {
                    done = false;
                    break;
                }
                idx[a] = lo;
            }
        }
    }

    // (ii) Tangential semiconvexity over axis and diagonal directions in the
    // plane; stencils stay on nodes, normalized by the squared step.
    double semi = std::numeric_limits<double>::infinity();
    {
        std::vector<std::array<int, 3>> taus;
        for (int a = 0; a < n - 1; ++a) {
            std::array<int, 3> t{};
            t[a] = 1;
            taus.push_back(t);
        }
        for (int a = 0; a < n - 1; ++a)
            for (int b = a + 1; b < n - 1; ++b) {
                taus.push_back({0, 0, 0});
                taus.back()[a] = 1;
                taus.back()[b] = 1;
                taus.push_back({0, 0, 0});
                taus.back()[a] = 1;
                taus.back()[b] = -1;
            }
        std::array<int, 3> idx{};
        for (int a = 0; a < n; ++a) idx[a] = lo;
        bool done = false;
        while (!done) {
            const double v0 = field.at(idx);
            for (const auto& t : taus) {
                std::array<int, 3> p = idx, q = idx;
                bool ok = true;
                int n2 = 0;
                for (int a = 0; a < n; ++a) {
                    p[a] += t[a];
                    q[a] -= t[a];
                    n2 += t[a] * t[a];
                    if (p[a] < 0 || p[a] >= m || q[a] < 0 || q[a] >= m) ok = false;
                }
                if (!ok) continue;
                const double dd = (field.at(p) - 2.0 * v0 + field.at(q)) / (h * h * n2);
                semi = std::min(semi, dd);
            }
            done = true;
            for (int a = n - 1; a >= 0; --a) {
                if (++idx[a] <= hi) {
                    done = false;
                    break;
                }
                idx[a] = lo;
            }
        }
        if (!std::isfinite(semi)) semi = 0.0;
    }

    // (iii) C^{1,1/2} quotient of nodal gradients on the upper side; the
    // normal derivative at the plane layer is one-sided from above.
    double chalf = 0.0;
    {
        const int zlo = mid;
        auto grad_at = [&](const std::array<int, 3>& idx) {
            Vec gr{};
            std::array<int, 3> j = idx;
            for (int a = 0; a < n - 1; ++a) {
                j[a] = idx[a] + 1;
                const double up = field.at(j);
                j[a] = idx[a] - 1;
                const double dn = field.at(j);
                j[a] = idx[a];
                gr[a] = (up - dn) / (2.0 * h);
            }
            if (idx[n - 1] == mid) {
                j[n - 1] = mid + 1;
                gr[n - 1] = (field.at(j) - field.at(idx)) / h;
            } else {
                j[n - 1] = idx[n - 1] + 1;
                const double up = field.at(j);
                j[n - 1] = idx[n - 1] - 1;
                const double dn = field.at(j);
                gr[n - 1] = (up - dn) / (2.0 * h);
            }
            return gr;
        };

        // Cache gradients over the upper half of the half-size box.
        const int tspan = hi - lo + 1;
        const int zspan = hi - zlo + 1;
        std::size_t total = zspan;
        for (int a = 0; a < n - 1; ++a) total *= tspan;
        std::vector<Vec> grads(total);
        auto cache_index = [&](const std::array<int, 3>& idx) {
            std::size_t f = 0;
            for (int a = 0; a < n - 1; ++a) f = f * tspan + (idx[a] - lo);
            return f * zspan + (idx[n - 1] - zlo);
        };
        std::array<int, 3> idx{};
        for (int a = 0; a < n - 1; ++a) idx[a] = lo;
        idx[n - 1] = zlo;
        bool done = false;
        while (!done) {
            grads[cache_index(idx)] = grad_at(idx);
            done = true;
            for (int a = n - 1; a >= 0; --a) {
                const int base = (a == n - 1) ? zlo : lo;
                if (++idx[a] <= hi) {
                    done = false;
                    break;
                }
                idx[a] = base;
            }
        }

        for (int a = 0; a < n; ++a) idx[a] = (a == n - 1) ? zlo : lo;
        done = false;
        while (!done) {
            const Vec g0 = grads[cache_index(idx)];
            for (const auto& d : offsets) {
                std::array<int, 3> jdx = idx;
                int n2 = 0;
                for (int a = 0; a < n; ++a) {
                    jdx[a] += d[a];
                    n2 += d[a] * d[a];
                }
                if (!in_range(jdx, zlo)) continue;
                const Vec g1 = grads[cache_index(jdx)];
                const double dist = h * std::sqrt(double(n2));
                chalf = std::max(chalf, norm(sub(g1, g0)) / std::sqrt(dist));
            }
            done = true;
            for (int a = n - 1; a >= 0; --a) {
                const int base = (a == n - 1) ? zlo : lo;
                if (++idx[a] <= hi) {
                    done = false;
                    break;
                }
                idx[a] = base;
            }
        }
    }

    const double l2 = field.l2_norm();
    const double inv = l2 > 0.0 ? 1.0 / l2 : 0.0;
    return {lip, lip * inv, semi, semi * inv, chalf, chalf * inv};
}

double dirichlet_energy(const ScalarField& field) {
    const Grid& g = field.grid();
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    const double hpow = std::pow(g.spacing(), n - 2);
    double e = 0.0;
    std::array<int, 3> idx{};
    bool done = false;
    while (!done) {
        const std::size_t f = g.index(idx);
        const double v0 = field[f];
        std::size_t stride = 1;
        for (int a = n - 1; a >= 0; --a) {
            if (idx[a] + 1 < m) {
                const double d = field[f + stride] - v0;
                e += d * d;
            }
            stride *= static_cast<std::size_t>(m);
        }
        done = true;
        for (int a = n - 1; a >= 0; --a) {
            if (++idx[a] < m) {
                done = false;
                break;
            }
            idx[a] = 0;
        }
    }
    return e * hpow;
}

}  // namespace signorini
