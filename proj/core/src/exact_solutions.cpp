#include "signorini/exact_solutions.hpp"

#include <cmath>

#include "signorini/errors.hpp"

namespace signorini {

namespace {

// Slit-plane polar coordinates about the profile axis: s along the axis,
// t = |x_n|, psi in [0, pi]. The |x_n| branch implements the even
// symmetrization once for all profiles.
struct SlitPolar {
    double rho;
    double psi;
    bool on_plane;  // x_n == 0
};

inline SlitPolar slit_polar(const Vec& p, const Direction& axis) {
    const double s = dot(p, axis.unit);
    const double t = std::abs(p[axis.dim - 1]);
    SlitPolar sp;
    sp.rho = std::hypot(s, t);
    sp.psi = std::atan2(t, s);
    sp.on_plane = (t == 0.0);
    return sp;
}

inline void require_tangential(const Direction& axis) {
    if (!axis.tangential)
        throw InvalidArgument("profile axis must be tangential (zero x_n component)");
}

}  // namespace

double regular_profile(const Vec& p, const Direction& axis) {
    require_tangential(axis);
    const SlitPolar sp = slit_polar(p, axis);
    if (sp.on_plane) {
        // psi is exactly 0 or pi; the profile is s^{3/2} on the positive ray
        // and vanishes identically on the slit.
        const double s = dot(p, axis.unit);
        return s > 0.0 ? s * std::sqrt(s) : 0.0;
    }
    return std::pow(sp.rho, 1.5) * std::cos(1.5 * sp.psi);
}

Vec regular_profile_gradient(const Vec& p, const Direction& axis, int dim) {
    require_tangential(axis);
    const SlitPolar sp = slit_polar(p, axis);
    const double r = std::sqrt(sp.rho);
    const double ds = 1.5 * r * std::cos(0.5 * sp.psi);
    const double dt = -1.5 * r * std::sin(0.5 * sp.psi);
    const double xn = p[dim - 1];
    const double sgn = xn < 0.0 ? -1.0 : 1.0;  // limit from x_n > 0 on the plane
    Vec g = scale(ds, axis.unit);
    g[dim - 1] += sgn * dt;
    return g;
}

double regular_profile_axis_derivative(const Vec& p, const Direction& axis) {
    require_tangential(axis);
    const SlitPolar sp = slit_polar(p, axis);
    return 1.5 * std::sqrt(sp.rho) * std::cos(0.5 * sp.psi);
}

double derivative_w(const Vec& p, const Direction& axis) {
    require_tangential(axis);
    const SlitPolar sp = slit_polar(p, axis);
    if (sp.on_plane) {
        const double s = dot(p, axis.unit);
        return s >= 0.0 ? 0.0 : std::sqrt(sp.rho);
    }
    return std::sqrt(sp.rho) * std::sin(0.5 * sp.psi);
}

double lewy_family(int k, LewyParity parity, const Vec& p) {
    if (k < 1) throw InvalidArgument("lewy_family: k must be >= 1");
    const double x1 = p[0];
    const double xn = p[1];
    const double rho = std::hypot(x1, xn);
    const double theta = std::atan2(xn, x1);
    if (parity == LewyParity::HalfInteger) {
        // k counts the half-integer members above the regular profile
        // rho^{3/2} cos(3 theta / 2); k = 1 is the first higher one.
        const double mu = k + 1.5;
        if (xn == 0.0 && x1 < 0.0) return 0.0;  // vanishes on the slit
        return std::pow(rho, mu) * std::cos(mu * theta);
    }
    return std::pow(rho, 2.0 * k) * std::cos(2.0 * k * theta);
}

double quadratic_profile(const ProfileSpec& spec, const Vec& p) {
    spec.validate();
    double v = 0.0;
    for (int i = 0; i < spec.dim - 1; ++i) v += spec.a[i] * p[i] * p[i];
    const double xn = p[spec.dim - 1];
    return v - spec.c * xn * xn;
}

void ProfileSpec::validate() const {
    if (dim != 2 && dim != 3) throw InvalidSpec("ProfileSpec: dimension must be 2 or 3");
    switch (kind) {
        case ProfileKind::Regular:
        case ProfileKind::DerivativeW:
            if (!axis.tangential) throw InvalidSpec("ProfileSpec: axis must be tangential");
            break;
        case ProfileKind::Lewy2D:
            if (dim != 2) throw InvalidSpec("ProfileSpec: Lewy family is two-dimensional");
            if (lewy_k < 1) throw InvalidSpec("ProfileSpec: Lewy k must be >= 1");
            break;
        case ProfileKind::Quadratic: {
            double sum = 0.0;
            for (int i = 0; i < dim - 1; ++i) {
                if (a[i] < 0.0) throw InvalidSpec("ProfileSpec: quadratic coefficients must be >= 0");
                sum += a[i];
            }
            if (std::abs(2.0 * sum - 2.0 * c) > 1e-12)
                throw InvalidSpec("ProfileSpec: harmonicity constraint sum(a) = c violated");
            break;
        }
    }
}

double ProfileSpec::homogeneity() const {
    switch (kind) {
        case ProfileKind::Regular: return 1.5;
        case ProfileKind::DerivativeW: return 0.5;
        case ProfileKind::Lewy2D:
            return parity == LewyParity::HalfInteger ? lewy_k + 1.5 : 2.0 * lewy_k;
        case ProfileKind::Quadratic: return 2.0;
    }
    return 0.0;
}

double ProfileSpec::operator()(const Vec& p) const {
    switch (kind) {
        case ProfileKind::Regular: return regular_profile(p, axis);
        case ProfileKind::DerivativeW: return signorini::derivative_w(p, axis);
        case ProfileKind::Lewy2D: return lewy_family(lewy_k, parity, p);
        case ProfileKind::Quadratic: return quadratic_profile(*this, p);
    }
    return 0.0;
}

ProfileSpec ProfileSpec::regular(int dim, const Direction& axis) {
    ProfileSpec s;
    s.kind = ProfileKind::Regular;
    s.dim = dim;
    s.axis = axis;
    s.validate();
    return s;
}

ProfileSpec ProfileSpec::derivative_w(int dim, const Direction& axis) {
    ProfileSpec s;
    s.kind = ProfileKind::DerivativeW;
    s.dim = dim;
    s.axis = axis;
    s.validate();
    return s;
}

ProfileSpec ProfileSpec::lewy(int k, LewyParity parity) {
    ProfileSpec s;
    s.kind = ProfileKind::Lewy2D;
    s.dim = 2;
    s.lewy_k = k;
    s.parity = parity;
    s.validate();
    return s;
}

ProfileSpec ProfileSpec::quadratic(int dim, const std::array<double, 2>& a, double c) {
    ProfileSpec s;
    s.kind = ProfileKind::Quadratic;
    s.dim = dim;
    s.a = a;
    s.c = c;
    s.validate();
    return s;
}

}  // namespace signorini
