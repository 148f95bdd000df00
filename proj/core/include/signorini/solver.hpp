#pragma once

#include <functional>
#include <vector>

#include "signorini/field.hpp"

namespace signorini {

/// Thin obstacle problem instance on the box [-L, L]^n: minimize the
/// Dirichlet integral over fields matching g on the box faces with u >= 0 on
/// the plane {x_n = 0}. g must be even in x_n; only the upper-half boundary
/// is sampled and the rest is mirrored.
struct ProblemSpec {
    int dim = 3;
    int m = 129;
    double half_width = 1.0;
    std::function<double(const Vec&)> boundary;
    double relaxation = 1.0;          // in (0, 2); 1.0 is plain projected Gauss-Seidel
    double tol_sweep_factor = 1e-10;  // eps_sweep = factor * max|g|
    double tol_comp_factor = 10.0;    // eps_comp = factor * h * max|g|
    int max_sweeps = 100000;

    void validate() const;
};

struct ComplementarityReport {
    double max_violation_u;        // (-u)+ over plane nodes
    double max_violation_flux;     // (delta_n u)+ over contact nodes
    double max_violation_product;  // u |delta_n u| over non-contact nodes
};

struct SolveResult {
    explicit SolveResult(ScalarField field) : u(std::move(field)) {}

    ScalarField u;
    int sweeps = 0;
    double final_update = 0.0;
    bool converged = false;
    double eps_sweep = 0.0;
    double eps_comp = 0.0;
    ComplementarityReport complementarity{};
    std::vector<double> energy;       // discrete Dirichlet energy after each sweep
    std::vector<double> max_updates;  // largest nodal update of each sweep
};

/// Projected Gauss-Seidel relaxation on the upper half-box with the reflected
/// stencil on the plane layer (x_n neighbor counted twice) and projection
/// onto u >= 0 there. Lexicographic sweep order, bit-reproducible.
SolveResult solve(const ProblemSpec& spec);

/// Discrete complementarity residuals on interior plane nodes; one-sided
/// flux delta_n u = (u(x', h) - u(x', 0)) / h.
ComplementarityReport complementarity_report(const ScalarField& u);

struct RegularityDiagnostics {
    double lipschitz_seminorm;
    double lipschitz_ratio;            // value / ||u||_L2
    double tangential_semiconvexity_min;
    double semiconvexity_ratio;
    double c_half_seminorm;
    double c_half_ratio;
};

/// Discrete counterparts of the a-priori estimates: Lipschitz quotient over
/// pairs at distance <= 4h, tangential second differences, and the C^{1,1/2}
/// gradient quotient on the upper side, all over the concentric half-size box.
RegularityDiagnostics regularity_diagnostics(const ScalarField& u);

/// Full-box discrete Dirichlet energy: sum over nearest-neighbor edges of
/// (u_a - u_b)^2 h^{n-2}.
double dirichlet_energy(const ScalarField& u);

}  // namespace signorini
