#pragma once

#include <optional>

#include "signorini/field.hpp"
#include "signorini/frequency.hpp"

namespace signorini {

/// Rescaled field v_r(x) = u(center + r x) / sqrt(phi_avg(r)) on its own grid
/// covering the box [-R, R]^n. The trace on the unit sphere has RMS 1.
struct BlowupField {
    ScalarField field;
    Vec source_center{};
    double source_radius = 0.0;
    double outer_radius = 0.0;
    double normalization = 0.0;  // sqrt(phi_avg(r)) of the source
};

enum class ProfileClass { Regular, DegenerateQuadratic, Other };

const char* to_string(ProfileClass c);

struct BlowupClassification {
    double mu = 0.0;
    ProfileClass cls = ProfileClass::Other;
    Direction axis;              // best-fit in-plane profile axis
    double regular_residual = 0.0;
    std::array<double, 2> quad_a{};
    double quad_c = 0.0;
    double quad_residual = 0.0;
    double residual = 0.0;       // residual of the branch backing cls
    double convexity_min = 0.0;
    double cone_margin = 0.0;
};

struct ClassifierOptions {
    double delta_mu = 0.1;  // class Regular needs mu in [1.5 - delta, 2 - delta]
    double rho_fit = 0.1;   // and profile residual <= rho_fit
};

/// Form the blow-up field. Requires r R <= boundary_distance(center) - 2h and
/// a nonvanishing sphere average at r; throws InvalidRadius / DegenerateCenter.
/// m_override picks the blow-up grid resolution (0 = automatic).
BlowupField rescale(const ScalarField& u, const Vec& center, double r, double R = 2.0,
                    int m_override = 0);

/// RMS of the field over the sphere of radius r about the origin of its grid.
double sphere_rms(const ScalarField& u, double r);

/// Classify a normalized blow-up field: estimate mu, fit the half-plane
/// profile rho^{3/2} cos(3 psi / 2) over in-plane axes, fit the harmonic
/// quadratic sum a_i x_i^2 - C x_n^2 with a_i >= 0, and apply the class rules.
BlowupClassification fit_profile(const BlowupField& v, const ClassifierOptions& opts = {});

/// Minimum tangential second difference over interior probe nodes, axes and
/// in-plane diagonals.
double convexity_check(const BlowupField& v);

/// Minimum of D_tau v / eta^{1/2} over probes in the ball of radius 5/6 with
/// |x_n| >= eta and directions tau = alpha axis + beta e, beta = sqrt(1-a^2).
/// A positive value certifies the cone bound with constant C(alpha) = margin.
double cone_bound_check(const BlowupField& v, double alpha, double eta,
                        const std::optional<Direction>& axis = std::nullopt);

/// Classify at several source radii; flags instability when the class
/// changes across them.
struct MultiScaleClassification {
    std::vector<double> radii;
    std::vector<BlowupClassification> per_radius;
    bool stable = false;
    ProfileClass cls = ProfileClass::Other;
};

MultiScaleClassification classify_across_scales(const ScalarField& u, const Vec& center,
                                                std::span<const double> radii, double R = 2.0,
                                                const ClassifierOptions& opts = {});

}  // namespace signorini
