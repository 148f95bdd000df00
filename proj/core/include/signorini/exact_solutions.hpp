#pragma once

#include <array>

#include "signorini/geometry.hpp"

namespace signorini {

enum class ProfileKind { Regular, DerivativeW, Lewy2D, Quadratic };
enum class LewyParity { HalfInteger, Even };

/// Closed-form global solution / profile descriptor.
struct ProfileSpec {
    ProfileKind kind = ProfileKind::Regular;
    int dim = 3;
    Direction axis;                 // Regular / DerivativeW, tangential
    int lewy_k = 1;                 // Lewy2D, k >= 1
    LewyParity parity = LewyParity::HalfInteger;
    std::array<double, 2> a{};      // Quadratic: tangential coefficients, a_i >= 0
    double c = 0.0;                 // Quadratic: coefficient of -x_n^2, sum(a) = c

    void validate() const;          // throws InvalidSpec
    double homogeneity() const;
    double operator()(const Vec& p) const;

    static ProfileSpec regular(int dim, const Direction& axis);
    static ProfileSpec derivative_w(int dim, const Direction& axis);
    static ProfileSpec lewy(int k, LewyParity parity);
    static ProfileSpec quadratic(int dim, const std::array<double, 2>& a, double c);
};

/// rho^{3/2} cos(3 psi / 2) with rho^2 = (p . axis)^2 + x_n^2 and
/// psi = atan2(|x_n|, p . axis) in [0, pi]; even in x_n, zero on the ray
/// {p . axis <= 0, x_n = 0}.
double regular_profile(const Vec& p, const Direction& axis);

/// Analytic gradient of regular_profile. On {x_n = 0} the normal component
/// is the one-sided limit from x_n > 0.
Vec regular_profile_gradient(const Vec& p, const Direction& axis, int dim);

/// Derivative of regular_profile along its axis: (3/2) rho^{1/2} cos(psi/2),
/// nonnegative everywhere.
double regular_profile_axis_derivative(const Vec& p, const Direction& axis);

/// rho^{1/2} sin(psi / 2): nonnegative, vanishing on {p . axis >= 0, x_n = 0}.
double derivative_w(const Vec& p, const Direction& axis);

/// 2D homogeneous harmonic family, theta = atan2(x_n, x_1). Half-integer
/// type rho^{k+3/2} cos((k+3/2) theta) (k = 1 is the first member above the
/// regular profile, homogeneity 5/2); even type rho^{2k} cos(2k theta).
double lewy_family(int k, LewyParity parity, const Vec& p);

/// sum_{i<n} a_i x_i^2 - c x_n^2 with the harmonicity constraint sum(a) = c.
double quadratic_profile(const ProfileSpec& spec, const Vec& p);

}  // namespace signorini
