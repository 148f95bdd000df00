#pragma once

#include <functional>
#include <span>
#include <vector>

#include "signorini/grid.hpp"

namespace signorini {

/// Nodal scalar values bound to a grid. Immutable by convention once built;
/// the solver owns the only mutating path.
class ScalarField {
public:
    ScalarField(GridPtr grid, std::vector<double> values, bool symmetric = false);
    static ScalarField zeros(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::span<double> mutable_values() { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double at(const std::array<int, 3>& idx) const { return values_[grid_->index(idx)]; }

    /// Even symmetry v(x', -x_n) = v(x', x_n), exact when flagged.
    bool symmetric() const { return symmetric_; }

    double max_abs() const;
    /// Discrete L2 norm sqrt(sum u^2 h^n) over the full box.
    double l2_norm() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    bool symmetric_;
};

/// Evaluate f at every node. Throws SamplingError with the node index if f
/// produces a non-finite value.
ScalarField sample(GridPtr grid, const std::function<double(const Vec&)>& f,
                   bool symmetric = false);

/// Multilinear interpolation from the 2^n surrounding nodes. Exact on
/// multilinear functions; p must lie in the closed box.
double interpolate(const ScalarField& u, const Vec& p);

/// Central difference of interpolate with step h per axis; p must be at
/// distance >= h from the box boundary.
Vec gradient(const ScalarField& u, const Vec& p);

/// (interpolate(p + h tau) - interpolate(p - h tau)) / (2h) for unit tau.
double directional_derivative(const ScalarField& u, const Vec& p, const Direction& tau);

/// Standard (2n+1)-point discrete Laplacian at an interior node.
double node_laplacian(const ScalarField& u, const std::array<int, 3>& idx);

/// Centered second difference (u(p + h tau) - 2u(p) + u(p - h tau)) / h^2.
double second_difference(const ScalarField& u, const Vec& p, const Direction& tau);

}  // namespace signorini
