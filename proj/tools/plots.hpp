#pragma once

#include <string>
#include <vector>

#include "signorini/field.hpp"
#include "signorini/free_boundary.hpp"
#include "signorini/frequency.hpp"

namespace signorini::cli {

/// Simple deterministic SVG line plot (fixed canvas, no timestamps).
struct Curve {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb3";
};

std::string svg_plot(const std::vector<Curve>& curves, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel);

/// D_r against r.
std::string frequency_curve_svg(const FrequencyReport& report);

/// log phi_avg against log r with the fitted slope overlaid.
std::string phi_loglog_svg(const FrequencyReport& report);

/// Plain-text PPM (P3) heatmap of u on the plane with interface cells
/// overlaid in black; diverging palette anchored at zero.
std::string plane_heatmap_ppm(const ScalarField& u, const FreeBoundaryResult* fb);

}  // namespace signorini::cli
