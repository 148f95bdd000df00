#pragma once

#include <cstdint>
#include <vector>

#include "signorini/field.hpp"

namespace signorini {

/// Contact mask on the plane layer, stored row-major over the tangential
/// indices, together with the plane trace of u used for sub-grid crossings.
struct ContactSet {
    GridPtr grid;
    std::vector<std::uint8_t> mask;   // true = contact (u <= tol)
    std::vector<double> plane_values; // u on the plane, same layout
    double tol = 0.0;

    std::size_t plane_count() const { return mask.size(); }
    bool empty() const;
    bool full() const;
    bool contact_at(const std::array<int, 3>& tangential_idx) const;
};

/// Threshold the plane trace; tol < 0 picks the default h max|u|.
ContactSet extract_contact(const ScalarField& u, double tol = -1.0);

struct GraphSample {
    double t = 0.0;        // transverse coordinate x_1
    double f = 0.0;        // crossing coordinate x_{n-1}
    bool valid = false;
    bool multi_crossing = false;
    bool trusted = true;   // false within 2h of the box edge
};

struct FreeBoundaryResult {
    // Plane cells with mixed contact/non-contact corners (tangential indices).
    std::vector<std::array<int, 2>> interface_cells;
    std::vector<std::uint8_t> cell_trusted;
    std::vector<GraphSample> graph;   // one per transverse line (3D only)
    bool graph_available = false;
    double lipschitz = 0.0;           // max slope between consecutive samples
    std::vector<Vec> boundary_points; // sub-grid crossing points on the plane
    std::vector<std::uint8_t> point_trusted;
};

/// Interface cells plus, for graph-representable sets, the crossing of the
/// plane trace through the contact tolerance per transverse line. Throws
/// NoFreeBoundary when the mask is empty or full.
FreeBoundaryResult extract_free_boundary(const ContactSet& c);

/// Sub-grid free-boundary points for probe placement: per transverse line,
/// the last node with u <= zero_tol is refined against the d^{3/2} growth of
/// u off the contact set, u(d) ~ lambda d^{3/2}, using the first two positive
/// nodes. Falls back to the crossing-cell midpoint when the growth fit is
/// unusable. Points within 2h of the box edge are dropped.
std::vector<Vec> subgrid_boundary_points(const ScalarField& u, double zero_tol);

/// Minimum centered directional difference of u over plane probes within
/// region_radius of center and directions sampling the axis and the boundary
/// of the tangential cone of half-opening theta about axis.
double cone_monotonicity(const ScalarField& u, double theta, double region_radius,
                         const Vec& center, const Direction& axis);

struct BarrierReport {
    double delta = 0.0;         // barrier weight actually used
    double c0 = 0.0;            // measured floor of h on |x_n| >= 1/(8(n-1))
    double min_boundary = 0.0;  // min of h + delta P over the sampled dQ
    double min_contact = 0.0;   // min over contact nodes inside Q
    double min_strip = 0.0;     // min over the lateral strip |x_n| < sigma
    double lap_defect = 0.0;    // max |discrete Laplacian of P| over interior nodes
    bool pass = false;
};

/// Comparison check with P(x) = |x' - z'|^2 - (n-1) x_n^2 on the box
/// Q = {|x' - z'| <= 1/3, |x_n| <= 1/(4(n-1))}. delta <= 0 selects the
/// weight 16(n-1) c0 from the measured floor c0 of hfield on the high part
/// of Q, which keeps h + delta P nonnegative there.
BarrierReport barrier_check(const ScalarField& hfield, const ContactSet* contact, const Vec& z,
                            double delta, double sigma);

struct QuotientReport {
    double alpha = 0.0;           // fitted Hoelder exponent of the quotient
    double residual = 0.0;        // RMS residual of the log-log fit
    bool constant_quotient = false;
    int probes = 0;
    double q_low = 0.0;
    double q_high = 0.0;
    double oscillation = 0.0;     // total oscillation over the band
};

/// Hoelder diagnostic of q = D_tau u / D_axis u at plane probes outside the
/// contact set within `band` of the free boundary. alpha comes from the
/// log-log fit of the cumulative oscillation of q at pair distance d against
/// d over [2h, band]. A quotient whose oscillation stays below resolution is
/// reported constant (every exponent holds; alpha = +inf).
QuotientReport quotient_diagnostic(const ScalarField& u, const Direction& tau, double band,
                                   const Direction& axis, const ContactSet& contact);

}  // namespace signorini
