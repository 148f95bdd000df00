#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "scenario.hpp"
#include "signorini/errors.hpp"

namespace fs = std::filesystem;
using namespace signorini;
using namespace signorini::cli;

namespace {

#ifndef SIGNORINI_CLI_PATH
#define SIGNORINI_CLI_PATH "signorini"
#endif

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SIGNORINI_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("signorini_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("scenario parsing and round trip") {
    Scenario s;
    s.name = "x";
    s.grid_n = 2;
    s.grid_m = 33;
    s.boundary_kind = "lewy";
    s.boundary_k = 2;
    s.boundary_parity = "even";
    s.relaxation = 1.5;
    const Scenario r = parse_scenario(emit_scenario(s));
    CHECK(emit_scenario(r) == emit_scenario(s));

    CHECK_THROWS_AS(parse_scenario("grid.q = 3\n"), InvalidSpec);
    CHECK_THROWS_AS(parse_scenario("grid.m\n"), InvalidSpec);
    CHECK_THROWS_AS(parse_scenario("grid.m = abc\n"), InvalidSpec);
    CHECK_THROWS_AS(parse_scenario("boundary.kind = wavelet\n"), InvalidSpec);

    const Scenario c = parse_scenario("# comment\nname = ok  # trailing\n\ngrid.m = 17\n");
    CHECK(c.name == "ok");
    CHECK(c.grid_m == 17);
}

TEST_CASE("scenario boundary functions") {
    Scenario s;
    s.grid_n = 3;
    s.boundary_kind = "linear";
    const auto g = s.boundary_function();
    CHECK(g({0.3, -0.7, 0.2}) == doctest::Approx(-0.7));
    CHECK(s.plane_axis().unit[1] == doctest::Approx(1.0));

    s.boundary_kind = "constant";
    s.boundary_value = 2.5;
    CHECK(s.boundary_function()({0.1, 0.2, 0.3}) == doctest::Approx(2.5));

    s.grid_n = 2;
    s.boundary_kind = "lewy";
    s.boundary_k = 1;
    s.boundary_parity = "even";
    CHECK(s.boundary_function()({0.6, 0.8, 0.0}) == doctest::Approx(-0.28));
}

TEST_CASE("cli exit codes and artifacts") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    const fs::path cfg = tmp.path / "tiny.cfg";
    write(cfg, "name = tiny\ngrid.n = 2\ngrid.m = 33\nboundary.kind = regular_profile\n"
               "probes.max = 2\noutput.dir = " + out.string() + "\n");

    // Missing subcommand / bad flags parse as errors.
    CHECK(run_cli("") == 2);
    CHECK(run_cli("solve") == 2);  // missing --scenario
    CHECK(run_cli("solve -s " + (tmp.path / "absent.cfg").string()) == 5);

    // Bad scenario key.
    const fs::path bad = tmp.path / "bad.cfg";
    write(bad, "grid.zzz = 1\n");
    CHECK(run_cli("solve -s " + bad.string()) == 2);

    // Prerequisite ordering: frequency before solve.
    CHECK(run_cli("frequency -s " + cfg.string()) == 5);

    // Solve, then the analysis subcommands.
    CHECK(run_cli("solve -s " + cfg.string()) == 0);
    CHECK(fs::exists(out / "tiny_field.txt"));
    CHECK(fs::exists(out / "tiny_convergence.csv"));
    CHECK(run_cli("frequency -s " + cfg.string()) == 0);
    CHECK(fs::exists(out / "tiny_freq_0.csv"));
    CHECK(fs::exists(out / "tiny_freq_0_D.svg"));
    CHECK(run_cli("blowup -s " + cfg.string()) == 0);
    CHECK(fs::exists(out / "tiny_blowup_0.txt"));
    CHECK(run_cli("freeboundary -s " + cfg.string()) == 0);
    CHECK(fs::exists(out / "tiny_heatmap.ppm"));
    CHECK(run_cli("report -s " + cfg.string()) == 0);
    CHECK(fs::exists(out / "tiny_report.md"));

    // Nonconvergence maps to exit 3.
    const fs::path slow = tmp.path / "slow.cfg";
    write(slow, "name = slow\ngrid.n = 2\ngrid.m = 33\nboundary.kind = linear\n"
                "solver.max_sweeps = 3\noutput.dir = " + out.string() + "\n");
    CHECK(run_cli("solve -s " + slow.string()) == 3);

    // Empty contact set: heatmap without overlay, no error.
    const fs::path flat = tmp.path / "flat.cfg";
    write(flat, "name = flat\ngrid.n = 2\ngrid.m = 33\nboundary.kind = constant\n"
                "output.dir = " + out.string() + "\n");
    CHECK(run_cli("solve -s " + flat.string()) == 0);
    CHECK(run_cli("freeboundary -s " + flat.string()) == 0);
    CHECK(fs::exists(out / "flat_heatmap.ppm"));
    CHECK(!fs::exists(out / "flat_interface.txt"));

    // --grid-m override is honored.
    CHECK(run_cli("solve -s " + cfg.string() + " --grid-m 17 --seedless") == 0);
}

TEST_CASE("cli artifacts are deterministic") {
    TempDir tmp;
    const fs::path out_a = tmp.path / "a";
    const fs::path out_b = tmp.path / "b";
    for (const fs::path& out : {out_a, out_b}) {
        const fs::path cfg = tmp.path / ("det_" + out.filename().string() + ".cfg");
        write(cfg, "name = det\ngrid.n = 2\ngrid.m = 33\nboundary.kind = regular_profile\n"
                   "probes.max = 2\noutput.dir = " + out.string() + "\n");
        REQUIRE(run_cli("solve -s " + cfg.string()) == 0);
        REQUIRE(run_cli("frequency -s " + cfg.string()) == 0);
        REQUIRE(run_cli("freeboundary -s " + cfg.string()) == 0);
    }
    for (const char* name : {"det_field.txt", "det_convergence.csv", "det_freq_0.csv",
                             "det_freq_0_D.svg", "det_heatmap.ppm", "det_graph.csv"}) {
        CHECK(slurp(out_a / name) == slurp(out_b / name));
    }
}
