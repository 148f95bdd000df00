#pragma once

#include <span>
#include <vector>

#include "signorini/field.hpp"

namespace signorini {

/// Ball quantities about a plane point: S_r = int_{dB_r} u^2 dsigma,
/// V_r = int_{B_r} |grad u|^2, phi_avg = S_r / |dB_r|.
struct BallIntegrals {
    double S;
    double V;
    double phi_avg;
};

struct RadiusSample {
    double r;
    double S;
    double V;
    double D;        // r V / S, undefined when degenerate
    double phi_avg;
    bool degenerate; // S vanishes at this radius
};

struct MuEstimate {
    bool valid = false;
    double mu = 0.0;
    double window_lo = 0.0;   // fit window actually used
    double window_hi = 0.0;
    double residual = 0.0;    // RMS of the log-log fit residuals
    int used = 0;             // radii inside the window
};

struct FrequencyReport {
    Vec center{};
    int dim = 0;
    double grid_h = 0.0;
    double grid_half_width = 0.0;
    double u_center = 0.0;
    bool hypothesis_violated = false;  // u(center) != 0 beyond plane tolerance
    bool degenerate = false;           // S_r vanished at every radius
    std::vector<RadiusSample> samples;
    MuEstimate mu;

    double max_frequency() const;
    double min_frequency() const;
};

struct MonotonicityViolation {
    double r_lo;
    double r_hi;
    double amount;
};

struct MonotonicityReport {
    std::vector<MonotonicityViolation> frequency;  // D_r decreased
    std::vector<MonotonicityViolation> phi;        // r^{-2 mu} phi_avg decreased
    std::vector<MonotonicityViolation> doubling;   // phi(R) grew faster than (R/r)^{2(mu+eps)}
    double tol = 0.0;
    double mu_used = 0.0;      // lower baseline for the phi monotonicity check
    double mu_doubling = 0.0;  // envelope exponent base for the doubling check
    double doubling_r0 = 0.0;  // largest radius satisfying the D_r <= mu + eps premise

    bool clean() const { return frequency.empty() && phi.empty() && doubling.empty(); }
};

/// Admissible radius window about a center: [4h, boundary_distance - 2h].
void check_radius(const Grid& g, const Vec& center, double r);

/// Evenly spaced admissible radii with the given step in units of h.
std::vector<double> default_radii(const Grid& g, const Vec& center, double step_factor = 1.0);

BallIntegrals ball_integrals(const ScalarField& u, const Vec& center, double r);

/// Mean of u^2 over the sphere of radius r about center (surface quadrature
/// only, no volume term).
double phi_average(const ScalarField& u, const Vec& center, double r);

FrequencyReport frequency_profile(const ScalarField& u, const Vec& center,
                                  std::span<const double> radii);

/// mu = half the least-squares slope of log phi_avg against log r over
/// [max(8h, r_first), min(L/4, r_last)]. Throws InsufficientData when fewer
/// than 4 usable radii fall in the window.
MuEstimate estimate_mu(const FrequencyReport& report);

/// Check D_r monotonicity, monotonicity of r^{-2 mu} phi_avg, and the
/// doubling inequality with slack eps. Violations beyond
/// tol = 5e-3 (1 + max D_r) are listed.
MonotonicityReport monotonicity_report(const FrequencyReport& report, double eps);

/// Relative defect of the Rellich-type identity
/// (n-2) V_r = r ( int_{dB_r} |grad u|^2 - 2 int_{dB_r} u_nu^2 ).
/// Throws DegenerateCenter when V_r = 0.
double rellich_defect(const ScalarField& u, const Vec& center, double r);

}  // namespace signorini
