#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "signorini/exact_solutions.hpp"
#include "signorini/field_io.hpp"
#include "signorini/frequency.hpp"
#include "signorini/reports.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace signorini;

TEST_CASE("field files round-trip bitwise") {
    const fs::path path = fs::temp_directory_path() / "signorini_field_roundtrip.txt";
    const Direction axis = Direction::axis(0, 2);
    auto g = make_grid(2, 33, 1.0);
    auto u = sample(g, [&](const Vec& p) { return regular_profile(p, axis); }, true);
    write_field(path.string(), u);
    const ScalarField v = read_field(path.string());
    CHECK(v.grid().dim() == 2);
    CHECK(v.grid().nodes_per_axis() == 33);
    CHECK(v.grid().half_width() == 1.0);
    CHECK(v.symmetric());
    REQUIRE(v.values().size() == u.values().size());
    for (std::size_t i = 0; i < u.values().size(); ++i) CHECK(v[i] == u[i]);
    fs::remove(path);

    // Header line first, x_n fastest: the second value line is the node
    // (0, 1), not (1, 0).
    write_field(path.string(), u);
    std::ifstream f(path);
    std::string header, first, second;
    std::getline(f, header);
    std::getline(f, first);
    std::getline(f, second);
    CHECK(header == "2 33 1 1");
    CHECK(std::stod(first) == u.at({0, 0, 0}));
    CHECK(std::stod(second) == u.at({0, 1, 0}));
    fs::remove(path);
}

TEST_CASE("malformed field files are rejected") {
    const fs::path path = fs::temp_directory_path() / "signorini_field_bad.txt";
    {
        std::ofstream f(path);
        f << "2 33 1.0 0\n1.0\n2.0\n";  // truncated payload
    }
    CHECK_THROWS_AS(read_field(path.string()), IoError);
    {
        std::ofstream f(path);
        f << "nonsense\n";
    }
    CHECK_THROWS_AS(read_field(path.string()), IoError);
    CHECK_THROWS_AS(read_field((path.string() + ".does_not_exist")), IoError);
    fs::remove(path);
}

TEST_CASE("report tables carry the documented headers") {
    auto g = make_grid(2, 33, 1.0);
    auto u = sample(g, [](const Vec& p) { return p[0]; }, true);
    const auto rep = frequency_profile(u, Vec{}, default_radii(*g, Vec{}));
    const std::string csv = frequency_csv(rep);
    CHECK(csv.rfind("r,S_r,V_r,D_r,phi_avg\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(rep.samples.size()));
}

TEST_CASE("estimate_mu requires four usable radii") {
    FrequencyReport rep;
    rep.dim = 2;
    rep.grid_h = 1.0 / 64.0;
    rep.grid_half_width = 1.0;
    for (int k = 0; k < 3; ++k) {
        RadiusSample s{};
        s.r = 0.13 + 0.01 * k;
        s.phi_avg = s.r * s.r;
        s.S = 1.0;
        rep.samples.push_back(s);
    }
    CHECK_THROWS_AS(estimate_mu(rep), InsufficientData);
}
