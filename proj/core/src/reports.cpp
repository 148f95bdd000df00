#include "signorini/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "signorini/errors.hpp"

namespace signorini {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string vec_str(const Vec& p, int dim) {
    std::string s;
    for (int a = 0; a < dim; ++a) {
        if (a) s += " ";
        s += num(p[a]);
    }
    return s;
}

void append_violations(std::string& out, const char* label,
                       const std::vector<MonotonicityViolation>& v) {
    out += label;
    out += " = ";
    out += std::to_string(v.size());
    out += "\n";
    for (const auto& x : v)
        out += std::string("  pair ") + num(x.r_lo) + " " + num(x.r_hi) + " amount " +
               num(x.amount) + "\n";
}

}  // namespace

std::string frequency_csv(const FrequencyReport& report) {
    std::string out = "r,S_r,V_r,D_r,phi_avg\n";
    for (const auto& s : report.samples) {
        out += num(s.r);
        out += ",";
        out += num(s.S);
        out += ",";
        out += num(s.V);
        out += ",";
        out += s.degenerate ? "nan" : num(s.D);
        out += ",";
        out += num(s.phi_avg);
        out += "\n";
    }
    return out;
}

std::string frequency_summary(const FrequencyReport& report, const MonotonicityReport& mono) {
    std::string out;
    out += "center = " + vec_str(report.center, report.dim) + "\n";
    out += "dim = " + std::to_string(report.dim) + "\n";
    out += "radii = " + std::to_string(report.samples.size()) + "\n";
    out += "u_center = " + num(report.u_center) + "\n";
    out += std::string("hypothesis_violated = ") + (report.hypothesis_violated ? "yes" : "no") + "\n";
    out += std::string("degenerate = ") + (report.degenerate ? "yes" : "no") + "\n";
    if (report.mu.valid) {
        out += "mu = " + num(report.mu.mu) + "\n";
        out += "mu_window = " + num(report.mu.window_lo) + " " + num(report.mu.window_hi) + "\n";
        out += "mu_residual = " + num(report.mu.residual) + "\n";
        out += "mu_radii_used = " + std::to_string(report.mu.used) + "\n";
    } else {
        out += "mu = unavailable\n";
    }
    out += "monotonicity_tol = " + num(mono.tol) + "\n";
    append_violations(out, "frequency_violations", mono.frequency);
    append_violations(out, "phi_violations", mono.phi);
    append_violations(out, "doubling_violations", mono.doubling);
    return out;
}

std::string convergence_csv(const SolveResult& result) {
    std::string out = "sweep,max_update,energy\n";
    for (std::size_t i = 0; i < result.energy.size(); ++i)
        out += std::to_string(i + 1) + "," + num(result.max_updates[i]) + "," +
               num(result.energy[i]) + "\n";
    return out;
}

std::string solve_summary(const SolveResult& result) {
    std::string out;
    out += std::string("converged = ") + (result.converged ? "yes" : "no") + "\n";
    out += "sweeps = " + std::to_string(result.sweeps) + "\n";
    out += "final_update = " + num(result.final_update) + "\n";
    out += "eps_sweep = " + num(result.eps_sweep) + "\n";
    out += "eps_comp = " + num(result.eps_comp) + "\n";
    out += "violation_u = " + num(result.complementarity.max_violation_u) + "\n";
    out += "violation_flux = " + num(result.complementarity.max_violation_flux) + "\n";
    out += "violation_product = " + num(result.complementarity.max_violation_product) + "\n";
    if (!result.energy.empty()) out += "final_energy = " + num(result.energy.back()) + "\n";
    return out;
}

std::string classification_text(const BlowupClassification& c) {
    std::string out;
    out += std::string("class = ") + to_string(c.cls) + "\n";
    out += "mu = " + num(c.mu) + "\n";
    out += "axis = " + vec_str(c.axis.unit, c.axis.dim) + "\n";
    out += "residual = " + num(c.residual) + "\n";
    out += "regular_residual = " + num(c.regular_residual) + "\n";
    out += "quad_a = " + num(c.quad_a[0]) + " " + num(c.quad_a[1]) + "\n";
    out += "quad_c = " + num(c.quad_c) + "\n";
    out += "quad_residual = " + num(c.quad_residual) + "\n";
    out += "convexity_min = " + num(c.convexity_min) + "\n";
    out += "cone_margin = " + num(c.cone_margin) + "\n";
    return out;
}

std::string classification_text(const MultiScaleClassification& c, const Vec& center) {
    std::string out;
    const int dim = c.per_radius.empty() ? 3 : c.per_radius.front().axis.dim;
    out += "center = " + vec_str(center, dim) + "\n";
    out += std::string("stable = ") + (c.stable ? "yes" : "no") + "\n";
    out += std::string("class = ") + to_string(c.cls) + "\n";
    for (std::size_t i = 0; i < c.radii.size(); ++i) {
        out += "[r = " + num(c.radii[i]) + "]\n";
        out += classification_text(c.per_radius[i]);
    }
    return out;
}

std::string contact_text(const ContactSet& c) {
    const Grid& g = *c.grid;
    const int n = g.dim();
    const int m = g.nodes_per_axis();
    std::string out;
    out += "tol = " + num(c.tol) + "\n";
    std::size_t count = 0;
    for (std::size_t t = 0; t < c.mask.size(); ++t)
        if (c.mask[t]) ++count;
    out += "contact_nodes = " + std::to_string(count) + "\n";
    for (std::size_t t = 0; t < c.mask.size(); ++t) {
        if (!c.mask[t]) continue;
        if (n == 2) {
            out += std::to_string(t) + " " + num(g.axis_coord(static_cast<int>(t))) + "\n";
        } else {
            const int i = static_cast<int>(t / m), j = static_cast<int>(t % m);
            out += std::to_string(i) + " " + std::to_string(j) + " " + num(g.axis_coord(i)) + " " +
                   num(g.axis_coord(j)) + "\n";
        }
    }
    return out;
}

std::string interface_text(const FreeBoundaryResult& fb) {
    std::string out;
    out += "interface_cells = " + std::to_string(fb.interface_cells.size()) + "\n";
    for (std::size_t k = 0; k < fb.interface_cells.size(); ++k) {
        out += std::to_string(fb.interface_cells[k][0]) + " " +
               std::to_string(fb.interface_cells[k][1]) + " " +
               (fb.cell_trusted[k] ? "trusted" : "untrusted") + "\n";
    }
    out += std::string("graph_available = ") + (fb.graph_available ? "yes" : "no") + "\n";
    if (fb.graph_available) out += "lipschitz = " + num(fb.lipschitz) + "\n";
    return out;
}

std::string graph_csv(const FreeBoundaryResult& fb) {
    std::string out = "t,f,trusted\n";
    for (const auto& s : fb.graph) {
        if (!s.valid) continue;
        out += num(s.t) + "," + num(s.f) + "," + (s.trusted ? "1" : "0") + "\n";
    }
    return out;
}

std::string quotient_text(const QuotientReport& q) {
    std::string out;
    if (q.constant_quotient) {
        out += "constant_quotient = yes\n";
        out += "alpha = inf\n";
    } else {
        out += "constant_quotient = no\n";
        out += "alpha = " + num(q.alpha) + "\n";
    }
    out += "residual = " + num(q.residual) + "\n";
    out += "probes = " + std::to_string(q.probes) + "\n";
    out += "q_range = " + num(q.q_low) + " " + num(q.q_high) + "\n";
    out += "oscillation = " + num(q.oscillation) + "\n";
    return out;
}

std::string barrier_text(const BarrierReport& b) {
    std::string out;
    out += "delta = " + num(b.delta) + "\n";
    out += "c0 = " + num(b.c0) + "\n";
    out += "min_boundary = " + num(b.min_boundary) + "\n";
    out += "min_contact = " + num(b.min_contact) + "\n";
    out += "min_strip = " + num(b.min_strip) + "\n";
    out += "lap_defect = " + num(b.lap_defect) + "\n";
    out += std::string("verdict = ") + (b.pass ? "pass" : "fail") + "\n";
    return out;
}

std::string regularity_text(const RegularityDiagnostics& d) {
    std::string out;
    out += "lipschitz_seminorm = " + num(d.lipschitz_seminorm) + "\n";
    out += "lipschitz_ratio = " + num(d.lipschitz_ratio) + "\n";
    out += "semiconvexity_min = " + num(d.tangential_semiconvexity_min) + "\n";
    out += "semiconvexity_ratio = " + num(d.semiconvexity_ratio) + "\n";
    out += "c_half_seminorm = " + num(d.c_half_seminorm) + "\n";
    out += "c_half_ratio = " + num(d.c_half_ratio) + "\n";
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("write_text: cannot open " + path);
    f << content;
    if (!f) throw IoError("write_text: write failed for " + path);
}

}  // namespace signorini
