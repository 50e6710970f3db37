#include "sie/features.hpp"

#include "sie/errors.hpp"

#include <string>

namespace sie {

namespace {

double range_mean(const DailySeries& series, const CivilDate& first, const CivilDate& last) {
    if (!series.covers(first) || !series.covers(last)) {
        throw CoverageError("window " + to_string(first) + ".." + to_string(last) +
                            " not covered by series " + to_string(series.start_date) + ".." +
                            to_string(series.end_date()));
    }
    const auto i0 = static_cast<std::size_t>(days_between(first, series.start_date));
    const auto i1 = static_cast<std::size_t>(days_between(last, series.start_date));
    double sum = 0.0;
    for (std::size_t i = i0; i <= i1; ++i) sum += series.values[i];
    return sum / static_cast<double>(i1 - i0 + 1);
}

}  // namespace

double month_average(const DailySeries& series, int year, int month) {
    const CivilDate first{year, month, 1};
    if (!is_valid(first)) {
        throw ArgumentError("invalid month " + std::to_string(year) + "-" + std::to_string(month));
    }
    return range_mean(series, first, CivilDate{year, month, days_in_month(year, month)});
}

double month_to_date_average(const DailySeries& series, int year, int month, int through_day) {
    const CivilDate first{year, month, 1};
    if (!is_valid(first)) {
        throw ArgumentError("invalid month " + std::to_string(year) + "-" + std::to_string(month));
    }
    if (through_day < 1 || through_day > days_in_month(year, month)) {
        throw ArgumentError("through_day " + std::to_string(through_day) + " outside 1.." +
                            std::to_string(days_in_month(year, month)) + " for " +
                            std::to_string(year) + "-" + std::to_string(month));
    }
    return range_mean(series, first, CivilDate{year, month, through_day});
}

double trailing_average(const DailySeries& series, const CivilDate& end_date, int window_days) {
    if (window_days < 1) {
        throw ArgumentError("window_days must be >= 1, got " + std::to_string(window_days));
    }
    return range_mean(series, add_days(end_date, -(window_days - 1)), end_date);
}

FeatureSet build_feature_rows(const DailySeries& series, const ForecastSpec& spec) {
    if (!is_valid(spec.forecast_date)) {
        throw InvalidDateError("invalid forecast date");
    }
    if (spec.lag_days < 0) {
        throw ArgumentError("lag_days must be >= 0, got " + std::to_string(spec.lag_days));
    }
    if (spec.target_month < 1 || spec.target_month > 12) {
        throw ArgumentError("target_month must be in 1..12, got " +
                            std::to_string(spec.target_month));
    }
    if (spec.target_year <= spec.first_training_year) {
        throw ArgumentError("no training years: target " + std::to_string(spec.target_year) +
                            " must exceed first training year " +
                            std::to_string(spec.first_training_year));
    }

    const CivilDate eff = spec.effective_date();
    const int forecast_month = spec.forecast_date.month;
    // True when the lag pushes the effective day back across the 1st of the
    // forecast month (possibly into the previous year).
    const bool eff_before_month = eff.month != forecast_month || eff.year != spec.forecast_date.year;
    // Year offsets of the effective date and of the month preceding the
    // forecast month, both relative to the forecast year.
    const int eff_year_offset = eff.year - spec.forecast_date.year;
    const int last_month = forecast_month == 1 ? 12 : forecast_month - 1;
    const int last_month_year_offset = forecast_month == 1 ? -1 : 0;

    FeatureSet out;
    if (eff_before_month && spec.variant == WindowVariant::MonthToDate) {
        out.warnings.push_back(
            "effective date " + to_string(eff) + " precedes " +
            to_string(CivilDate{spec.forecast_date.year, forecast_month, 1}) +
            "; month-to-date window falls back to the effective day alone");
    }

    auto make_row = [&](int year, bool is_forecast_row) {
        const int eff_year = year + eff_year_offset;
        int eff_day = eff.day;
        if (eff_day > days_in_month(eff_year, eff.month)) {
            eff_day = days_in_month(eff_year, eff.month);
            out.warnings.push_back("effective day clamped to " + to_string(CivilDate{
                                       eff_year, eff.month, eff_day}));
        }
        const CivilDate aligned{eff_year, eff.month, eff_day};

        FeatureRow row;
        row.year = year;
        row.time_index = year - 1978;
        try {
            row.sie_today = series.at(aligned);
            row.sie_last_month =
                month_average(series, year + last_month_year_offset, last_month);
            if (spec.variant == WindowVariant::Trailing30) {
                row.sie_window = trailing_average(series, aligned, 30);
            } else if (eff_before_month) {
                row.sie_window = row.sie_today;
            } else {
                row.sie_window = month_to_date_average(series, year, forecast_month, eff_day);
            }
            if (!is_forecast_row) {
                row.target = month_average(series, year, spec.target_month);
            }
        } catch (const CoverageError& e) {
            throw CoverageError("year " + std::to_string(year) + ": " + e.what());
        }
        return row;
    };

    for (int year = spec.first_training_year; year < spec.target_year; ++year) {
        out.training.push_back(make_row(year, false));
    }
    out.forecast_row = make_row(spec.target_year, true);
    return out;
}

}  // namespace sie
