#include "signorini/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "signorini/errors.hpp"

namespace signorini {

double sphere_area(int dim, double r) {
    return dim == 2 ? 2.0 * std::numbers::pi * r : 4.0 * std::numbers::pi * r * r;
}

int sphere_point_count(int dim, double r, double h) {
    if (dim == 2) {
        const double target = 2.0 * std::numbers::pi * r / h;
        return std::max(64, static_cast<int>(std::ceil(target)));
    }
    const double target = 4.0 * std::numbers::pi * r * r / (h * h);
    return std::max(256, static_cast<int>(std::ceil(target)));
}

std::vector<SpherePoint> sphere_quadrature(int dim, const Vec& center, double r, int n_points) {
    if (n_points < 1) throw InvalidArgument("sphere_quadrature: need at least one point");
    std::vector<SpherePoint> pts;
    pts.reserve(n_points);
    const double w = sphere_area(dim, r) / n_points;
    if (dim == 2) {
        // Equally spaced angles; on a periodic integrand the trapezoid rule
        // collapses to equal weights.
        for (int i = 0; i < n_points; ++i) {
            const double th = 2.0 * std::numbers::pi * i / n_points;
            pts.push_back({{center[0] + r * std::cos(th), center[1] + r * std::sin(th), 0.0}, w});
        }
        return pts;
    }
    // Fibonacci lattice: midpoint offsets in z, golden-angle spiral in
    // azimuth. No pole clustering, fully deterministic.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < n_points; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n_points;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * std::numbers::pi * golden * i;
        pts.push_back({{center[0] + r * s * std::cos(phi),
                        center[1] + r * s * std::sin(phi),
                        center[2] + r * z},
                       w});
    }
    return pts;
}

}  // namespace signorini
