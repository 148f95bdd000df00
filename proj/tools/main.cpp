#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plots.hpp"
#include "scenario.hpp"
#include "signorini/blowup.hpp"
#include "signorini/errors.hpp"
#include "signorini/field_io.hpp"
#include "signorini/free_boundary.hpp"
#include "signorini/frequency.hpp"
#include "signorini/reports.hpp"
#include "signorini/solver.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace signorini;
using namespace signorini::cli;

namespace {

// Exit codes: 0 success, 2 parse error, 3 nonconverged solve,
// 4 verification failure, 5 missing prerequisite artifact.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNonConverged = 3;
constexpr int kExitVerify = 4;
constexpr int kExitMissing = 5;

struct CommonArgs {
    std::string scenario_path;
    std::string out_override;
    int grid_m_override = 0;
    bool seedless = false;  // accepted for scripting symmetry; nothing is randomized
    std::string field_override;
    std::vector<double> center_override;
};

Scenario finalize(Scenario sc, const CommonArgs& args) {
    if (args.grid_m_override > 0) sc.grid_m = args.grid_m_override;
    if (!args.out_override.empty()) sc.output_dir = args.out_override;
    return sc;
}

std::string path_for(const Scenario& sc, const std::string& suffix) {
    return (fs::path(sc.output_dir) / (sc.name + suffix)).string();
}

ScalarField load_solution(const Scenario& sc, const CommonArgs& args) {
    const std::string path =
        args.field_override.empty() ? path_for(sc, "_field.txt") : args.field_override;
    if (!fs::exists(path))
        throw IoError("missing solution field " + path + " (run the solve subcommand first)");
    return read_field(path);
}

// Probe centers on the free boundary; falls back to the origin for fields
// without a detectable interface (oracle scenarios).
std::vector<Vec> probe_centers(const Scenario& sc, const ScalarField& u,
                               const CommonArgs& args) {
    if (!args.center_override.empty()) {
        Vec c{};
        for (std::size_t i = 0; i < args.center_override.size() && i < 2; ++i)
            c[i] = args.center_override[i];
        if (u.grid().dim() == 2) c[1] = 0.0;
        c[u.grid().dim() - 1] = 0.0;
        return {c};
    }
    std::vector<Vec> pts = subgrid_boundary_points(u, sc.probe_zero_tol_factor * u.max_abs());
    std::vector<Vec> trusted;
    for (const auto& p : pts)
        if (std::abs(p[0]) <= sc.probe_trust_radius && std::abs(p[1]) <= sc.probe_trust_radius)
            trusted.push_back(p);
    if (trusted.empty()) return {Vec{}};
    if (static_cast<int>(trusted.size()) > sc.probe_max) {
        std::vector<Vec> thinned;
        const double stride = static_cast<double>(trusted.size()) / sc.probe_max;
        for (int k = 0; k < sc.probe_max; ++k)
            thinned.push_back(trusted[static_cast<std::size_t>(k * stride)]);
        trusted = thinned;
    }
    return trusted;
}

std::vector<double> radius_ladder(const Scenario& sc, const Grid& g, const Vec& center) {
    const double h = g.spacing();
    const double r_adm = g.boundary_distance(center) - 2.0 * h;
    auto build = [&](double r_max) {
        std::vector<double> radii;
        for (double r = 4.0 * h; r <= r_max + 1e-12; r += sc.radii_step_factor * h)
            radii.push_back(r);
        return radii;
    };
    double r_max = r_adm;
    if (sc.radii_max > 0.0) r_max = std::min(r_max, sc.radii_max);
    auto radii = build(r_max);
    // On coarse grids the configured cap can leave too few rungs for the mu
    // fit; fall back to the full admissible window.
    if (radii.size() < 4) radii = build(r_adm);
    return radii;
}

int cmd_solve(const Scenario& sc) {
    fs::create_directories(sc.output_dir);
    const SolveResult r = solve(sc.problem());
    write_field(path_for(sc, "_field.txt"), r.u);
    write_text(path_for(sc, "_convergence.csv"), convergence_csv(r));
    write_text(path_for(sc, "_solve.txt"), solve_summary(r));
    write_text(path_for(sc, "_regularity.txt"), regularity_text(regularity_diagnostics(r.u)));
    write_text(path_for(sc, ".scenario.txt"), emit_scenario(sc));
    std::printf("%s: %s after %d sweeps (final update %.3g)\n", sc.name.c_str(),
                r.converged ? "converged" : "NOT converged", r.sweeps, r.final_update);
    return r.converged ? kExitOk : kExitNonConverged;
}

int cmd_frequency(const Scenario& sc, const CommonArgs& args) {
    const ScalarField u = load_solution(sc, args);
    fs::create_directories(sc.output_dir);
    const auto centers = probe_centers(sc, u, args);
    int k = 0;
    for (const auto& center : centers) {
        const auto radii = radius_ladder(sc, u.grid(), center);
        if (radii.size() < 2) continue;
        const auto rep = frequency_profile(u, center, radii);
        const auto mono = monotonicity_report(rep, 0.1);
        const std::string tag = "_freq_" + std::to_string(k);
        write_text(path_for(sc, tag + ".csv"), frequency_csv(rep));
        write_text(path_for(sc, tag + ".txt"), frequency_summary(rep, mono));
        write_text(path_for(sc, tag + "_D.svg"), frequency_curve_svg(rep));
        write_text(path_for(sc, tag + "_phi.svg"), phi_loglog_svg(rep));
        if (rep.mu.valid)
            std::printf("probe %d: mu = %.4f (residual %.2e)\n", k, rep.mu.mu, rep.mu.residual);
        else
            std::printf("probe %d: mu unavailable\n", k);
        ++k;
    }
    if (k == 0) {
        std::fprintf(stderr, "no admissible probe centers\n");
        return kExitMissing;
    }
    return kExitOk;
}

int cmd_blowup(const Scenario& sc, const CommonArgs& args) {
    const ScalarField u = load_solution(sc, args);
    fs::create_directories(sc.output_dir);
    const Grid& g = u.grid();
    const double h = g.spacing();
    const auto centers = probe_centers(sc, u, args);
    ClassifierOptions opts;
    opts.delta_mu = sc.classifier_delta_mu;
    opts.rho_fit = sc.classifier_rho_fit;
    int k = 0;
    for (const auto& center : centers) {
        std::vector<double> radii;
        const double r_adm = g.boundary_distance(center) - 2.0 * h;
        for (double f : sc.blowup_radius_factors) {
            const double r = f * h;
            if (r * sc.blowup_outer_radius <= r_adm && r >= 4.0 * h) radii.push_back(r);
        }
        // Coarse grids may not admit any configured dyadic radius; the
        // smallest admissible one still gives a classification.
        if (radii.empty() && 4.0 * h * sc.blowup_outer_radius <= r_adm) radii.push_back(4.0 * h);
        if (radii.empty()) continue;
        const auto multi = classify_across_scales(u, center, radii, sc.blowup_outer_radius, opts);
        write_text(path_for(sc, "_blowup_" + std::to_string(k) + ".txt"),
                   classification_text(multi, center));
        std::printf("probe %d: class %s at smallest radius%s\n", k, to_string(multi.cls),
                    multi.stable ? "" : " (unstable across radii)");
        ++k;
    }
    if (k == 0) {
        std::fprintf(stderr, "no admissible blow-up radii at any probe\n");
        return kExitMissing;
    }
    return kExitOk;
}

int cmd_freeboundary(const Scenario& sc, const CommonArgs& args) {
    const ScalarField u = load_solution(sc, args);
    fs::create_directories(sc.output_dir);
    const Grid& g = u.grid();
    const int n = g.dim();
    const Direction axis = sc.plane_axis();

    const ContactSet contact = extract_contact(u, sc.contact_tol);
    write_text(path_for(sc, "_contact.txt"), contact_text(contact));

    std::optional<FreeBoundaryResult> fb;
    if (!contact.empty() && !contact.full()) {
        fb = extract_free_boundary(contact);
        write_text(path_for(sc, "_interface.txt"), interface_text(*fb));
        write_text(path_for(sc, "_graph.csv"), graph_csv(*fb));
    }
    write_text(path_for(sc, "_heatmap.ppm"), plane_heatmap_ppm(u, fb ? &*fb : nullptr));

    const auto centers = probe_centers(sc, u, args);
    const Vec center = centers[centers.size() / 2];

    const double cone_min =
        cone_monotonicity(u, sc.cone_theta, sc.cone_region_radius, center, axis);
    std::string cone_txt = "theta = " + std::to_string(sc.cone_theta) + "\n";
    cone_txt += "region_radius = " + std::to_string(sc.cone_region_radius) + "\n";
    cone_txt += "min_directional_derivative = " + std::to_string(cone_min) + "\n";
    write_text(path_for(sc, "_cone.txt"), cone_txt);

    // Barrier comparison on the axis-derivative field about the central probe.
    try {
        const double h = g.spacing();
        std::vector<double> dvals(g.node_count(), 0.0);
        std::array<int, 3> idx{};
        for (std::size_t f = 0; f < dvals.size(); ++f) {
            idx = g.unpack(f);
            const Vec p = g.coord(idx);
            if (g.boundary_distance(p) >= h) dvals[f] = directional_derivative(u, p, axis);
        }
        const ScalarField hfield(u.grid_ptr(), std::move(dvals), false);
        const auto bar = barrier_check(hfield, &contact, center, sc.barrier_delta, sc.barrier_sigma);
        write_text(path_for(sc, "_barrier.txt"), barrier_text(bar));
    } catch (const Error& e) {
        write_text(path_for(sc, "_barrier.txt"), std::string("unavailable: ") + e.what() + "\n");
    }

    try {
        const Direction tau =
            n == 2 ? axis
                   : Direction::make(add(axis.unit, Vec{-axis.unit[1], axis.unit[0], 0.0}), 3);
        const auto q = quotient_diagnostic(u, tau, sc.quotient_band, axis, contact);
        write_text(path_for(sc, "_quotient.txt"), quotient_text(q));
        if (q.constant_quotient)
            std::printf("quotient constant at resolution; every exponent holds\n");
        else
            std::printf("quotient Hoelder exponent %.3f (residual %.3f)\n", q.alpha, q.residual);
    } catch (const Error& e) {
        write_text(path_for(sc, "_quotient.txt"), std::string("unavailable: ") + e.what() + "\n");
    }
    std::printf("contact nodes: %zu; interface cells: %zu\n",
                static_cast<std::size_t>(
                    std::count(contact.mask.begin(), contact.mask.end(), std::uint8_t(1))),
                fb ? fb->interface_cells.size() : 0);
    return kExitOk;
}

int cmd_verify() {
    const auto results = run_verify_suite();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-36s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu checks, %d failures\n", results.size(), failures);
    return failures == 0 ? kExitOk : kExitVerify;
}

int cmd_report(const Scenario& sc) {
    const char* sections[][2] = {
        {"_solve.txt", "Solve"},
        {"_regularity.txt", "Regularity diagnostics"},
        {"_freq_0.txt", "Frequency (probe 0)"},
        {"_blowup_0.txt", "Blow-up (probe 0)"},
        {"_interface.txt", "Free boundary"},
        {"_cone.txt", "Monotone cone"},
        {"_barrier.txt", "Barrier"},
        {"_quotient.txt", "Quotient diagnostic"},
    };
    std::string out = "# " + sc.name + "\n";
    int found = 0;
    for (const auto& sec : sections) {
        const std::string path = path_for(sc, sec[0]);
        if (!fs::exists(path)) continue;
        ++found;
        out += "\n## " + std::string(sec[1]) + "\n\n```\n";
        FILE* f = std::fopen(path.c_str(), "rb");
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, got);
        std::fclose(f);
        out += "```\n";
    }
    if (found == 0) {
        std::fprintf(stderr, "no artifacts for scenario '%s' under %s\n", sc.name.c_str(),
                     sc.output_dir.c_str());
        return kExitMissing;
    }
    write_text(path_for(sc, "_report.md"), out);
    std::printf("report with %d sections -> %s\n", found, path_for(sc, "_report.md").c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thin obstacle problem laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
        if (needs_scenario)
            cmd->add_option("-s,--scenario", args.scenario_path, "scenario file")->required();
        cmd->add_option("--out", args.out_override, "output directory override");
        cmd->add_option("--grid-m", args.grid_m_override, "nodes per axis override");
        cmd->add_flag("--seedless", args.seedless,
                      "assert no randomized components (always true; flag accepted for scripts)");
    };

    auto* c_solve = app.add_subcommand("solve", "solve the thin obstacle problem");
    add_common(c_solve, true);
    auto* c_freq = app.add_subcommand("frequency", "frequency reports at free-boundary probes");
    add_common(c_freq, true);
    c_freq->add_option("--field", args.field_override, "solution field file override");
    c_freq->add_option("--center", args.center_override, "explicit probe center (plane coords)")
        ->expected(1, 2);
    auto* c_blow = app.add_subcommand("blowup", "blow-up classification at probes");
    add_common(c_blow, true);
    c_blow->add_option("--field", args.field_override, "solution field file override");
    c_blow->add_option("--center", args.center_override, "explicit probe center (plane coords)")
        ->expected(1, 2);
    auto* c_fb = app.add_subcommand("freeboundary", "contact set, interface, cone, quotient");
    add_common(c_fb, true);
    c_fb->add_option("--field", args.field_override, "solution field file override");
    auto* c_verify = app.add_subcommand("verify", "run the module invariant suite");
    add_common(c_verify, false);
    auto* c_report = app.add_subcommand("report", "aggregate artifacts into one summary");
    add_common(c_report, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (c_verify->parsed()) return cmd_verify();
        const Scenario sc = finalize(load_scenario(args.scenario_path), args);
        if (c_solve->parsed()) return cmd_solve(sc);
        if (c_freq->parsed()) return cmd_frequency(sc, args);
        if (c_blow->parsed()) return cmd_blowup(sc, args);
        if (c_fb->parsed()) return cmd_freeboundary(sc, args);
        if (c_report->parsed()) return cmd_report(sc);
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "scenario error: %s\n", e.what());
        return kExitParse;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitMissing;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
