#pragma once

#include <array>
#include <cmath>

#include "signorini/errors.hpp"

namespace signorini {

/// Point or vector in R^n, n <= 3. Components beyond the active dimension
/// stay zero so that dot products over the full array are safe.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec add(const Vec& a, const Vec& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec sub(const Vec& a, const Vec& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec scale(double c, const Vec& a) { return {c * a[0], c * a[1], c * a[2]}; }

inline double distance(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

/// Unit vector tagged with whether it lies in the hyperplane {x_n = 0}.
/// The normal axis is component dim-1.
struct Direction {
    Vec unit{};
    int dim = 0;
    bool tangential = false;

    static Direction make(Vec v, int dim) {
        double len = 0.0;
        for (int i = 0; i < dim; ++i) len += v[i] * v[i];
        len = std::sqrt(len);
        if (!(len > 0.0) || !std::isfinite(len))
            throw InvalidArgument("Direction: zero or non-finite vector");
        Direction d;
        d.dim = dim;
        for (int i = 0; i < dim; ++i) d.unit[i] = v[i] / len;
        d.tangential = std::abs(d.unit[dim - 1]) <= 1e-12;
        return d;
    }

    static Direction axis(int i, int dim) {
        Vec v{};
        v[i] = 1.0;
        return make(v, dim);
    }

    Direction negated() const { return make(scale(-1.0, unit), dim); }
};

/// Angle between two unit directions, in [0, pi].
inline double angle_between(const Direction& a, const Direction& b) {
    double c = dot(a.unit, b.unit);
    c = std::max(-1.0, std::min(1.0, c));
    return std::acos(c);
}

}  // namespace signorini
