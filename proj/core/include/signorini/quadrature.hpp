#pragma once

#include <vector>

#include "signorini/geometry.hpp"

namespace signorini {

/// One quadrature node on a sphere, with its surface weight.
struct SpherePoint {
    Vec x;
    double w;
};

/// Surface measure of the sphere of radius r in dimension dim (2 pi r or 4 pi r^2).
double sphere_area(int dim, double r);

/// Default point count for grid spacing h: 2D max(64, ceil(2 pi r / h)),
/// 3D max(256, ceil(4 pi r^2 / h^2)).
int sphere_point_count(int dim, double r, double h);

/// Deterministic equal-weight rule on the sphere of radius r about center:
/// equally spaced angles in 2D, a Fibonacci lattice in 3D. Weights sum to
/// the exact surface measure.
std::vector<SpherePoint> sphere_quadrature(int dim, const Vec& center, double r, int n_points);

}  // namespace signorini
