#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "signorini/errors.hpp"

namespace signorini::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InvalidSpec("scenario: bad numeric value for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    const int i = static_cast<int>(std::lround(x));
    if (std::abs(x - i) > 1e-9) throw InvalidSpec("scenario: expected integer for " + key);
    return i;
}

std::vector<double> to_vector(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::istringstream is(v);
    std::string tok;
    while (is >> tok) out.push_back(to_double(key, tok));
    if (out.empty()) throw InvalidSpec("scenario: empty vector for " + key);
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidSpec("scenario line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw InvalidSpec("scenario line " + std::to_string(lineno) + ": empty key or value");

        if (key == "name") s.name = val;
        else if (key == "grid.n") s.grid_n = to_int(key, val);
        else if (key == "grid.m") s.grid_m = to_int(key, val);
        else if (key == "grid.half_width") s.half_width = to_double(key, val);
        else if (key == "boundary.kind") s.boundary_kind = val;
        else if (key == "boundary.value") s.boundary_value = to_double(key, val);
        else if (key == "boundary.axis_angle") s.boundary_axis_angle = to_double(key, val);
        else if (key == "boundary.a") s.boundary_a = to_vector(key, val);
        else if (key == "boundary.c") s.boundary_c = to_double(key, val);
        else if (key == "boundary.k") s.boundary_k = to_int(key, val);
        else if (key == "boundary.parity") s.boundary_parity = val;
        else if (key == "solver.relaxation") s.relaxation = to_double(key, val);
        else if (key == "solver.max_sweeps") s.max_sweeps = to_int(key, val);
        else if (key == "solver.tol_sweep_factor") s.tol_sweep_factor = to_double(key, val);
        else if (key == "solver.tol_comp_factor") s.tol_comp_factor = to_double(key, val);
        else if (key == "contact.tol") s.contact_tol = to_double(key, val);
        else if (key == "probes.trust_radius") s.probe_trust_radius = to_double(key, val);
        else if (key == "probes.max") s.probe_max = to_int(key, val);
        else if (key == "probes.zero_tol_factor") s.probe_zero_tol_factor = to_double(key, val);
        else if (key == "radii.step_factor") s.radii_step_factor = to_double(key, val);
        else if (key == "radii.max") s.radii_max = to_double(key, val);
        else if (key == "blowup.radius_factors") s.blowup_radius_factors = to_vector(key, val);
        else if (key == "blowup.outer_radius") s.blowup_outer_radius = to_double(key, val);
        else if (key == "classifier.delta_mu") s.classifier_delta_mu = to_double(key, val);
        else if (key == "classifier.rho_fit") s.classifier_rho_fit = to_double(key, val);
        else if (key == "quotient.band") s.quotient_band = to_double(key, val);
        else if (key == "cone.theta") s.cone_theta = to_double(key, val);
        else if (key == "cone.region_radius") s.cone_region_radius = to_double(key, val);
        else if (key == "barrier.sigma") s.barrier_sigma = to_double(key, val);
        else if (key == "barrier.delta") s.barrier_delta = to_double(key, val);
        else if (key == "output.dir") s.output_dir = val;
        else
            throw InvalidSpec("scenario line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }

    if (s.boundary_kind != "linear" && s.boundary_kind != "constant" &&
        s.boundary_kind != "regular_profile" && s.boundary_kind != "quadratic_profile" &&
        s.boundary_kind != "lewy")
        throw InvalidSpec("scenario: unknown boundary.kind '" + s.boundary_kind + "'");
    if (s.boundary_parity != "half" && s.boundary_parity != "even")
        throw InvalidSpec("scenario: boundary.parity must be 'half' or 'even'");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

std::string emit_scenario(const Scenario& s) {
    std::string out;
    auto kv = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
    kv("name", s.name);
    kv("grid.n", std::to_string(s.grid_n));
    kv("grid.m", std::to_string(s.grid_m));
    kv("grid.half_width", num(s.half_width));
    kv("boundary.kind", s.boundary_kind);
    kv("boundary.value", num(s.boundary_value));
    kv("boundary.axis_angle", num(s.boundary_axis_angle));
    {
        std::string v;
        for (std::size_t i = 0; i < s.boundary_a.size(); ++i)
            v += (i ? " " : "") + num(s.boundary_a[i]);
        kv("boundary.a", v);
    }
    kv("boundary.c", num(s.boundary_c));
    kv("boundary.k", std::to_string(s.boundary_k));
    kv("boundary.parity", s.boundary_parity);
    kv("solver.relaxation", num(s.relaxation));
    kv("solver.max_sweeps", std::to_string(s.max_sweeps));
    kv("solver.tol_sweep_factor", num(s.tol_sweep_factor));
    kv("solver.tol_comp_factor", num(s.tol_comp_factor));
    kv("contact.tol", num(s.contact_tol));
    kv("probes.trust_radius", num(s.probe_trust_radius));
    kv("probes.max", std::to_string(s.probe_max));
    kv("probes.zero_tol_factor", num(s.probe_zero_tol_factor));
    kv("radii.step_factor", num(s.radii_step_factor));
    kv("radii.max", num(s.radii_max));
    {
        std::string v;
        for (std::size_t i = 0; i < s.blowup_radius_factors.size(); ++i)
            v += (i ? " " : "") + num(s.blowup_radius_factors[i]);
        kv("blowup.radius_factors", v);
    }
    kv("blowup.outer_radius", num(s.blowup_outer_radius));
    kv("classifier.delta_mu", num(s.classifier_delta_mu));
    kv("classifier.rho_fit", num(s.classifier_rho_fit));
    kv("quotient.band", num(s.quotient_band));
    kv("cone.theta", num(s.cone_theta));
    kv("cone.region_radius", num(s.cone_region_radius));
    kv("barrier.sigma", num(s.barrier_sigma));
    kv("barrier.delta", num(s.barrier_delta));
    kv("output.dir", s.output_dir);
    return out;
}

std::function<double(const Vec&)> Scenario::boundary_function() const {
    const int n = grid_n;
    if (boundary_kind == "constant") {
        const double v = boundary_value;
        return [v](const Vec&) { return v; };
    }
    if (boundary_kind == "linear") {
        return [n](const Vec& p) { return p[n - 2]; };
    }
    if (boundary_kind == "regular_profile") {
        const Direction axis = plane_axis();
        return [axis](const Vec& p) { return regular_profile(p, axis); };
    }
    if (boundary_kind == "quadratic_profile") {
        std::array<double, 2> a{};
        for (std::size_t i = 0; i < boundary_a.size() && i < 2; ++i) a[i] = boundary_a[i];
        const auto spec = ProfileSpec::quadratic(n, a, boundary_c);
        return [spec](const Vec& p) { return quadratic_profile(spec, p); };
    }
    // lewy (2D only)
    if (n != 2) throw InvalidSpec("scenario: lewy boundary data requires grid.n = 2");
    const auto spec = ProfileSpec::lewy(
        boundary_k, boundary_parity == "half" ? LewyParity::HalfInteger : LewyParity::Even);
    return [spec](const Vec& p) { return spec(p); };
}

Direction Scenario::plane_axis() const {
    // Angle 0 is the distinguished in-plane axis e_{n-1}.
    if (grid_n == 2) {
        return std::cos(boundary_axis_angle) >= 0.0 ? Direction::axis(0, 2)
                                                    : Direction::axis(0, 2).negated();
    }
    return Direction::make({std::sin(boundary_axis_angle), std::cos(boundary_axis_angle), 0.0}, 3);
}

ProblemSpec Scenario::problem() const {
    ProblemSpec p;
    p.dim = grid_n;
    p.m = grid_m;
    p.half_width = half_width;
    p.boundary = boundary_function();
    p.relaxation = relaxation;
    p.max_sweeps = max_sweeps;
    p.tol_sweep_factor = tol_sweep_factor;
    p.tol_comp_factor = tol_comp_factor;
    return p;
}

}  // namespace signorini::cli
