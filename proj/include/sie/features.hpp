#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sie/forecast_spec.hpp"
#include "sie/series.hpp"

namespace sie {

/// One regression observation: the covariates observable on the effective
/// date of some year, and (for training years) that year's realized
/// target-month average.
struct FeatureRow {
    int year = 0;
    int time_index = 0;          // year - 1978, so 1979 -> 1
    double sie_last_month = 0.0;  // previous calendar month's average
    double sie_window = 0.0;      // month-to-date or trailing-30-day average
    double sie_today = 0.0;       // extent on the effective date
    std::optional<double> target;  // target-month average; absent for the forecast year
};

/// Training rows plus the forecast-year row (target absent), with any
/// calendar-edge warnings raised while aligning the windows.
struct FeatureSet {
    std::vector<FeatureRow> training;
    FeatureRow forecast_row{};
    std::vector<std::string> warnings;
};

/// Mean of every daily value in the calendar month (leap-aware).
/// Throws CoverageError unless the whole month lies within the series.
[[nodiscard]] double month_average(const DailySeries& series, int year, int month);

/// Mean of days 1..through_day of the month. Throws ArgumentError when
/// through_day falls outside [1, days in month], CoverageError when the
/// days are not covered.
[[nodiscard]] double month_to_date_average(const DailySeries& series, int year, int month,
                                           int through_day);

/// Mean of the window_days values ending at end_date inclusive.
/// Throws ArgumentError for window_days < 1, CoverageError when the window
/// escapes the series range.
[[nodiscard]] double trailing_average(const DailySeries& series, const CivilDate& end_date,
                                      int window_days = 30);

/// Build the aligned feature table for a forecast: one training row per
/// year from spec.first_training_year through target_year - 1, plus the
/// forecast-year row.
///
/// Every row's covariates are evaluated on the same month/day as the
/// spec's effective date (Feb 29 falls back to Feb 28 in non-leap years,
/// with a warning). When the effective date precedes the 1st of the
/// forecast month, the month-to-date window falls back to a 1-day window
/// on the effective date itself, with a warning.
///
/// Throws InvalidDateError for an invalid forecast date, ArgumentError for
/// a degenerate spec (no training years), and CoverageError naming the
/// year whose windows the series cannot cover.
[[nodiscard]] FeatureSet build_feature_rows(const DailySeries& series, const ForecastSpec& spec);

}  // namespace sie
