#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "sie/forecast.hpp"

namespace sie {

enum class BootstrapMode {
    ShiftOnly,  // draw = mu + resampled residual
    Refit,      // re-estimate on resampled targets, predict, add a residual
};

[[nodiscard]] constexpr const char* to_string(BootstrapMode m) noexcept {
    return m == BootstrapMode::ShiftOnly ? "shift-only" : "refit";
}

struct BootstrapConfig {
    std::size_t draws = 10000;  // B >= 1
    std::uint64_t seed = 0;
    BootstrapMode mode = BootstrapMode::ShiftOnly;
};

/// B draws from the resampled predictive distribution, in generation
/// order. Draws are reproducible bit-for-bit from (series, spec, config):
/// the generator is the standard 64-bit Mersenne Twister and indices are
/// taken by rejection so no platform-dependent distribution code is
/// involved.
struct BootstrapDistribution {
    std::vector<double> draws;
    ForecastSpec spec{};
    BootstrapConfig config{};

    /// Linear-interpolation empirical quantile: with the B sorted draws
    /// 1-indexed, the p-quantile sits at rank h = (B-1)p + 1 and
    /// interpolates between floor(h) and the next draw.
    [[nodiscard]] double quantile(double p) const;
};

/// Residual bootstrap around forecast(series, spec).
///
/// ShiftOnly: each draw is mu plus one residual sampled uniformly with
/// replacement from the n training residuals. Refit: each draw rebuilds
/// targets y* = fitted + resampled residuals, refits the model, predicts
/// the forecast row, and adds one further resampled residual, folding in
/// parameter estimation uncertainty.
///
/// Throws ArgumentError when config.draws = 0; propagates estimation
/// errors from forecast().
[[nodiscard]] BootstrapDistribution residual_bootstrap(const DailySeries& series,
                                                       const ForecastSpec& spec,
                                                       const BootstrapConfig& config);

/// Central interval: quantiles at (1-coverage)/2 and 1-(1-coverage)/2.
/// Throws ArgumentError unless 0 < coverage < 1.
[[nodiscard]] std::pair<double, double> quantile_interval(const BootstrapDistribution& dist,
                                                          double coverage = 0.95);

/// One draw per line, 6 decimal places, no header.
void write_draws_csv(const BootstrapDistribution& dist, std::ostream& out);

}  // namespace sie
