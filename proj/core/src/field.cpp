#include "signorini/field.hpp"

#include <cmath>
#include <string>

#include "signorini/errors.hpp"

namespace signorini {

ScalarField::ScalarField(GridPtr grid, std::vector<double> values, bool symmetric)
    : grid_(std::move(grid)), values_(std::move(values)), symmetric_(symmetric) {
    if (!grid_) throw InvalidArgument("ScalarField: null grid");
    if (values_.size() != grid_->node_count())
        throw InvalidArgument("ScalarField: value count " + std::to_string(values_.size()) +
                              " does not match node count " + std::to_string(grid_->node_count()));
    if (symmetric_) {
        // Verify the mirror identity exactly; callers must not lie.
        const int n = grid_->dim();
        const int m = grid_->nodes_per_axis();
        const std::size_t tangential = values_.size() / static_cast<std::size_t>(m);
        for (std::size_t t = 0; t < tangential; ++t) {
            const double* col = values_.data() + t * static_cast<std::size_t>(m);
            for (int k = 0; k < m / 2; ++k) {
                if (col[k] != col[m - 1 - k])
                    throw InvalidArgument("ScalarField: symmetric flag set but values are not even in x_n");
            }
        }
        (void)n;
    }
}

ScalarField ScalarField::zeros(GridPtr grid) {
    std::vector<double> v(grid->node_count(), 0.0);
    return ScalarField(std::move(grid), std::move(v), true);
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::l2_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s * std::pow(grid_->spacing(), grid_->dim()));
}

ScalarField sample(GridPtr grid, const std::function<double(const Vec&)>& f, bool symmetric) {
    const Grid& g = *grid;
    std::vector<double> vals(g.node_count());
    std::array<int, 3> idx{};
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    for (std::size_t flat = 0; flat < vals.size(); ++flat) {
        double v = f(g.coord(idx));
        if (!std::isfinite(v))
            throw SamplingError("sample: non-finite value at node " + std::to_string(flat), flat);
        vals[flat] = v;
        for (int a = n - 1; a >= 0; --a) {
            if (++idx[a] < m) break;
            idx[a] = 0;
        }
    }
    return ScalarField(std::move(grid), std::move(vals), symmetric);
}

namespace {

struct CellLocator {
    std::array<int, 3> base{};
    std::array<double, 3> frac{};
};

inline CellLocator locate(const Grid& g, const Vec& p) {
    if (!g.contains(p))
        throw OutOfDomain("interpolate: point outside the computational box");
    CellLocator loc;
    const double h = g.spacing();
    const int m = g.nodes_per_axis();
    for (int a = 0; a < g.dim(); ++a) {
        double t = p[a] / h + g.plane_layer();
        int i = static_cast<int>(std::floor(t));
        if (i < 0) i = 0;
        if (i > m - 2) i = m - 2;
        loc.base[a] = i;
        loc.frac[a] = t - i;
    }
    return loc;
}

}  // namespace

double interpolate(const ScalarField& u, const Vec& p) {
    const Grid& g = u.grid();
    const CellLocator loc = locate(g, p);
    const auto vals = u.values();
    if (g.dim() == 2) {
        const std::size_t m = g.nodes_per_axis();
        const std::size_t i0 = static_cast<std::size_t>(loc.base[0]) * m + loc.base[1];
        const double fx = loc.frac[0], fy = loc.frac[1];
        const double v00 = vals[i0], v01 = vals[i0 + 1];
        const double v10 = vals[i0 + m], v11 = vals[i0 + m + 1];
        return (1 - fx) * ((1 - fy) * v00 + fy * v01) + fx * ((1 - fy) * v10 + fy * v11);
    }
    const std::size_t m = g.nodes_per_axis();
    const std::size_t sy = m, sx = m * m;
    const std::size_t i0 =
        static_cast<std::size_t>(loc.base[0]) * sx + static_cast<std::size_t>(loc.base[1]) * sy + loc.base[2];
    const double fx = loc.frac[0], fy = loc.frac[1], fz = loc.frac[2];
    auto blend_z = [&](std::size_t b) { return (1 - fz) * vals[b] + fz * vals[b + 1]; };
    const double c00 = blend_z(i0), c01 = blend_z(i0 + sy);
    const double c10 = blend_z(i0 + sx), c11 = blend_z(i0 + sx + sy);
    return (1 - fx) * ((1 - fy) * c00 + fy * c01) + fx * ((1 - fy) * c10 + fy * c11);
}

Vec gradient(const ScalarField& u, const Vec& p) {
    const Grid& g = u.grid();
    const int n = g.dim();
    const double h = g.spacing();
    if (g.boundary_distance(p) < h * (1.0 - 1e-12))
        throw OutOfDomain("gradient: stencil leaves the box");
    Vec grad{};
    for (int a = 0; a < n; ++a) {
        if (a == n - 1 && u.symmetric() && std::abs(p[a]) < h) {
            // A centered stencil across the plane sees the mirrored value of
            // the even field and damps the one-sided normal derivative by
            // |x_n|/h, which loses gradient energy along the contact set.
            // Use a one-sided second-order stencil on the near side instead.
            const double t = std::abs(p[a]);
            Vec q = p;
            q[a] = t;
            const double f0 = interpolate(u, q);
            q[a] = t + h;
            const double f1 = interpolate(u, q);
            q[a] = t + 2.0 * h;
            const double f2 = interpolate(u, q);
            const double one_sided = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
            grad[a] = p[a] < 0.0 ? -one_sided : one_sided;
            continue;
        }
        Vec q = p;
        q[a] = p[a] + h;
        const double fp = interpolate(u, q);
        q[a] = p[a] - h;
        const double fm = interpolate(u, q);
        grad[a] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

double directional_derivative(const ScalarField& u, const Vec& p, const Direction& tau) {
    const double h = u.grid().spacing();
    return (interpolate(u, add(p, scale(h, tau.unit))) -
            interpolate(u, sub(p, scale(h, tau.unit)))) /
           (2.0 * h);
}

double node_laplacian(const ScalarField& u, const std::array<int, 3>& idx) {
    const Grid& g = u.grid();
    const double h2 = g.spacing() * g.spacing();
    std::array<int, 3> j = idx;
    double acc = 0.0;
    const double center = u.at(idx);
    for (int a = 0; a < g.dim(); ++a) {
        j[a] = idx[a] + 1;
        acc += u.at(j);
        j[a] = idx[a] - 1;
        acc += u.at(j);
        j[a] = idx[a];
        acc -= 2.0 * center;
    }
    return acc / h2;
}

double second_difference(const ScalarField& u, const Vec& p, const Direction& tau) {
    const double h = u.grid().spacing();
    const double vp = interpolate(u, add(p, scale(h, tau.unit)));
    const double vm = interpolate(u, sub(p, scale(h, tau.unit)));
    const double vc = interpolate(u, p);
    return (vp - 2.0 * vc + vm) / (h * h);
}

}  // namespace signorini
