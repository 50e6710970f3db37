#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sie/forecast.hpp"

namespace sie {

/// Per-offset predictive density grids: columns offset,extent,density,
/// 201 points spanning mu +/- 4 sigma per successful offset. Offsets whose
/// density is too narrow to grid (step below 1e-6) or that failed are
/// annotated as '#' comment lines. Each emitted grid trapezoid-integrates
/// to 1 within 1e-3.
void write_density_grid_csv(const SweepResult& result, std::ostream& out);

/// Fan chart of the sweep: the point-forecast path with its +/- 2 sigma
/// band and a horizontal line at the realized value when known. Pure SVG
/// primitives; output is deterministic, with `stamp` recorded in a leading
/// metadata comment.
void write_fan_chart_svg(const SweepResult& result, std::ostream& out,
                         const std::string& stamp = "");

/// Overlay of several forecasts' Gaussian predictive densities on one
/// axis (one curve per forecast, labeled by effective date), plus a
/// vertical line at the realized value when known. Degenerate
/// (sigma = 0) forecasts are skipped with a comment.
void write_density_overlay_svg(const std::vector<ForecastDistribution>& forecasts,
                               const std::optional<double>& realized, std::ostream& out,
                               const std::string& stamp = "");

}  // namespace sie
