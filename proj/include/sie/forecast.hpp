#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sie/features.hpp"
#include "sie/forecast_spec.hpp"
#include "sie/regression.hpp"
#include "sie/series.hpp"

namespace sie {

/// A point forecast with its uncertainty. The predictive density is
/// Gaussian N(mu, sigma^2) unless bootstrap draws are attached, in which
/// case density_at switches to an empirical histogram over the draws.
///
/// Invariants: sigma >= 0; interval_lo = mu - 2 sigma; interval_hi =
/// mu + 2 sigma.
struct ForecastDistribution {
    ForecastSpec spec{};
    CivilDate effective_date{};  // last day of data the forecast may use
    double mu = 0.0;             // million km^2
    double sigma = 0.0;          // million km^2
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    RegressionFit fit;           // the freshly estimated training fit
    std::vector<std::string> warnings;
    std::vector<double> bootstrap_draws;  // optional; empty means Gaussian density
};

/// Training design (intercept, time index, last-month average, window
/// average, today's value), stacked targets, and the forecast-year
/// regressor vector.
struct AssembledDesign {
    DesignMatrix design;
    Eigen::VectorXd y;
    Eigen::VectorXd x_forecast;
};

/// Throws ArgumentError when a training row lacks a target.
[[nodiscard]] AssembledDesign assemble_design(const FeatureSet& features);

/// Fit the direct-projection model for this spec on the training years
/// only and evaluate it at the forecast row. The target year never enters
/// estimation.
///
/// Throws ArgumentError when the forecast date falls after the target
/// month's last day; propagates CoverageError / CollinearityError /
/// InsufficientDataError from feature building and fitting.
[[nodiscard]] ForecastDistribution forecast(const DailySeries& series, const ForecastSpec& spec);

/// Predictive density at x (per million km^2): Gaussian pdf, or, when
/// bootstrap draws are attached, a histogram density with bin width
/// 3.49 * sd(draws) * B^(-1/3).
///
/// Throws DegenerateDensityError when sigma (or the draw spread) is zero;
/// use the point forecast instead.
[[nodiscard]] double density_at(const ForecastDistribution& dist, double x);

/// Whether a sweep offset counts days to the issue date or to the
/// effective (data) date.
enum class OffsetBasis {
    ForecastDate,   // forecast_date = month_end + offset; data lags behind
    EffectiveDate,  // effective_date = month_end + offset; issued lag days later
};

/// The day-by-day sweep: one re-estimated trailing-window forecast per
/// offset. offset 0 lands on the last day of the target month and
/// negative offsets precede it.
struct SweepSpec {
    int target_year = 0;
    int target_month = 9;
    int first_offset = -120;
    int last_offset = 0;
    int lag_days = 1;
    OffsetBasis basis = OffsetBasis::ForecastDate;
    int first_training_year = 1979;
};

struct SweepEntry {
    int offset = 0;  // days until the last day of the target month
    CivilDate forecast_date{};
    CivilDate effective_date{};
    std::optional<ForecastDistribution> forecast;  // absent when the entry failed
    std::string error;                             // failure reason, empty on success

    [[nodiscard]] bool ok() const noexcept { return forecast.has_value(); }
};

struct SweepResult {
    int target_year = 0;
    int target_month = 9;
    std::vector<SweepEntry> entries;  // strictly increasing offsets
    std::optional<double> realized;   // target-month average when complete

    [[nodiscard]] std::size_t n_ok() const noexcept {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.ok() ? 1 : 0;
        return n;
    }
};

/// Run the sweep. Every entry uses the trailing-30-day variant and is
/// estimated independently; a failing offset records its reason without
/// aborting the rest. Throws ArgumentError for an empty or reversed
/// offset range.
[[nodiscard]] SweepResult sweep(const DailySeries& series, const SweepSpec& spec);

/// Days from `date` to the last day of (year, month); 0 when date is the
/// month's last day, negative before it.
[[nodiscard]] int offset_from_month_end(const CivilDate& date, int year, int month);

/// CSV with columns offset,effective_date,mu,sigma,lo,hi,realized
/// (realized blank if unknown), 6 decimal places. Failed sweep entries
/// become '#' comment lines carrying the offset and reason.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// Same schema for a list of standalone forecasts; offsets are computed
/// from each forecast date relative to its target month end.
void write_forecast_csv(const std::vector<ForecastDistribution>& forecasts,
                        const std::optional<double>& realized, std::ostream& out);

}  // namespace sie
