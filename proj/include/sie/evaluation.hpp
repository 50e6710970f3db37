#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sie/forecast.hpp"

namespace sie {

/// A forecast recipe applied identically across backtest years: issue on
/// the same month/day each year, same variant and lag.
struct DateTemplate {
    int month = 0;
    int day = 0;
    WindowVariant variant = WindowVariant::MonthToDate;
    int lag_days = 1;
    int target_month = 9;
    int first_training_year = 1979;
};

/// One out-of-sample year: the forecast made with data available then,
/// against what the month actually averaged.
struct BacktestRow {
    int target_year = 0;
    CivilDate forecast_date{};
    double mu = 0.0;
    double sigma = 0.0;
    double realized = 0.0;
    double error = 0.0;  // mu - realized
    bool interval_hit = false;  // realized within mu +/- 2 sigma
};

struct BacktestResult {
    std::vector<BacktestRow> rows;
    std::vector<std::string> skipped;  // "year: reason" for years left out
};

/// Forecast each year in [first_year, last_year] with the template,
/// training only on years strictly before it. Years with fewer than 10
/// training years, incomplete target months, or coverage gaps are skipped
/// with a recorded reason rather than failing the run.
[[nodiscard]] BacktestResult backtest(const DailySeries& series, int first_year, int last_year,
                                      const DateTemplate& tmpl);

/// MSE-based skill of a model against a benchmark over the same years.
struct SkillReport {
    double model_mse = 0.0;
    double benchmark_mse = 0.0;
    double skill = 0.0;  // 1 - model_mse / benchmark_mse
    std::size_t n_years = 0;
    std::string benchmark_name;
};

/// Throws ArgumentError when the year sets differ or are empty, and
/// UndefinedSkillError when the benchmark MSE is zero.
[[nodiscard]] SkillReport skill_score(const std::vector<BacktestRow>& model_rows,
                                      const std::vector<BacktestRow>& benchmark_rows,
                                      const std::string& benchmark_name);

/// Naive baselines sharing the ForecastDistribution shape.
enum class BenchmarkKind {
    Climatology,           // mean of historical target-month averages
    TrendOnly,             // intercept + time trend fit
    LastMonthPersistence,  // previous month's average carried forward
};

[[nodiscard]] constexpr const char* to_string(BenchmarkKind k) noexcept {
    switch (k) {
        case BenchmarkKind::Climatology: return "climatology";
        case BenchmarkKind::TrendOnly: return "trend-only";
        default: return "last-month-persistence";
    }
}

/// Benchmark forecast under the same spec (same training years, same
/// effective-date discipline).
///
/// Climatology fits an intercept-only model; TrendOnly fits intercept +
/// time index. LastMonthPersistence predicts the month preceding the
/// forecast month with no estimated parameters; its sigma is the root
/// mean square of the historical persistence errors (divisor n, since
/// k = 0).
[[nodiscard]] ForecastDistribution benchmark_forecast(const DailySeries& series,
                                                      const ForecastSpec& spec,
                                                      BenchmarkKind kind);

/// CSV: target_year,forecast_date,mu,sigma,lo,hi,realized,error,interval_hit
/// at 6 decimal places; interval_hit is 0/1.
void write_backtest_csv(const BacktestResult& result, std::ostream& out);

}  // namespace sie
