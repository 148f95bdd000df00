#pragma once

#include <functional>
#include <string>
#include <vector>

#include "signorini/exact_solutions.hpp"
#include "signorini/geometry.hpp"
#include "signorini/solver.hpp"

namespace signorini::cli {

/// Scenario configuration: flat `key = value` text with dotted sections and
/// `#` comments. Unknown keys are parse errors. See docs/formats.md.
struct Scenario {
    std::string name = "scenario";

    int grid_n = 3;
    int grid_m = 129;
    double half_width = 1.0;

    // Boundary data descriptor.
    std::string boundary_kind = "linear";  // linear | constant | regular_profile |
                                           // quadratic_profile | lewy
    double boundary_value = 1.0;           // constant
    double boundary_axis_angle = 0.0;      // regular_profile, in-plane angle
    std::vector<double> boundary_a{1.0, 1.0};
    double boundary_c = 2.0;
    int boundary_k = 1;
    std::string boundary_parity = "half";  // half | even

    double relaxation = 1.0;
    int max_sweeps = 100000;
    double tol_sweep_factor = 1e-10;
    double tol_comp_factor = 10.0;

    double contact_tol = -1.0;        // < 0 : default h max|u|
    double probe_trust_radius = 0.5;
    int probe_max = 16;
    double probe_zero_tol_factor = 1e-7;

    double radii_step_factor = 2.0;
    double radii_max = 0.25;          // 0 : full admissible window

    std::vector<double> blowup_radius_factors{8.0, 16.0, 32.0};
    double blowup_outer_radius = 2.0;
    double classifier_delta_mu = 0.1;
    double classifier_rho_fit = 0.1;

    double quotient_band = 0.2;
    double cone_theta = 1.0471975511965976;  // pi/3
    double cone_region_radius = 0.25;
    double barrier_sigma = 0.05;
    double barrier_delta = -1.0;      // < 0 : weight 16(n-1) c0 from the measured floor

    std::string output_dir = "out";

    /// Resolved boundary closed form and the in-plane profile axis.
    std::function<double(const Vec&)> boundary_function() const;
    Direction plane_axis() const;

    ProblemSpec problem() const;
};

/// Parse scenario text; throws InvalidSpec with a message on malformed input.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Canonical emission; parse(emit(s)) resolves to the same values.
std::string emit_scenario(const Scenario& s);

}  // namespace signorini::cli
