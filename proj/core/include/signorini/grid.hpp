#pragma once

#include <array>
#include <cstddef>
#include <memory>

#include "signorini/geometry.hpp"

namespace signorini {

/// Uniform nodal grid on the box [-L, L]^n, n in {2, 3}, with the hyperplane
/// {x_n = 0} resolved exactly by the middle nodal layer (m odd).
/// Values are stored row-major with the x_n index fastest.
class Grid {
public:
    Grid(int dim, int nodes_per_axis, double half_width);

    int dim() const { return n_; }
    int nodes_per_axis() const { return m_; }
    double half_width() const { return L_; }
    double spacing() const { return h_; }
    /// Index of the nodal layer realizing x_n = 0.
    int plane_layer() const { return mid_; }
    std::size_t node_count() const { return count_; }
    std::size_t cell_count() const;

    std::size_t index(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < n_; ++a) flat = flat * static_cast<std::size_t>(m_) + idx[a];
        return flat;
    }
    std::array<int, 3> unpack(std::size_t flat) const {
        std::array<int, 3> idx{};
        for (int a = n_ - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % m_);
            flat /= m_;
        }
        return idx;
    }

    // Centered form: mirrored indices get exactly opposite coordinates even
    // when h is not representable (the endpoints may differ from +-L by an
    // ulp, covered by the containment slack).
    double axis_coord(int i) const { return (i - mid_) * h_; }
    Vec coord(const std::array<int, 3>& idx) const {
        Vec p{};
        for (int a = 0; a < n_; ++a) p[a] = axis_coord(idx[a]);
        return p;
    }

    /// True when p lies in the closed box, with a small rounding slack.
    bool contains(const Vec& p) const {
        const double slack = 1e-12 * L_;
        for (int a = 0; a < n_; ++a)
            if (p[a] < -L_ - slack || p[a] > L_ + slack) return false;
        return true;
    }

    /// Distance from p to the box boundary (min over faces).
    double boundary_distance(const Vec& p) const {
        double d = L_;
        for (int a = 0; a < n_; ++a) d = std::min(d, L_ - std::abs(p[a]));
        return d;
    }

    bool is_boundary(const std::array<int, 3>& idx) const {
        for (int a = 0; a < n_; ++a)
            if (idx[a] == 0 || idx[a] == m_ - 1) return true;
        return false;
    }

private:
    int n_;
    int m_;
    double L_;
    double h_;
    int mid_;
    std::size_t count_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Build a grid; m must be odd and >= 9 so that the plane layer exists,
/// dim must be 2 or 3.
GridPtr make_grid(int dim, int nodes_per_axis, double half_width = 1.0);

}  // namespace signorini
