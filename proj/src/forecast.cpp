#include "sie/forecast.hpp"

#include "sie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace sie {

AssembledDesign assemble_design(const FeatureSet& features) {
    const auto n = static_cast<Eigen::Index>(features.training.size());
    AssembledDesign out;
    out.design.col_names = {"intercept", "time_index", "sie_last_month", "sie_window",
                            "sie_today"};
    out.design.X.resize(n, 5);
    out.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const FeatureRow& row = features.training[static_cast<std::size_t>(i)];
        if (!row.target) {
            throw ArgumentError("training row for year " + std::to_string(row.year) +
                                " has no target");
        }
        out.design.X(i, 0) = 1.0;
        out.design.X(i, 1) = static_cast<double>(row.time_index);
        out.design.X(i, 2) = row.sie_last_month;
        out.design.X(i, 3) = row.sie_window;
        out.design.X(i, 4) = row.sie_today;
        out.y[i] = *row.target;
    }
    const FeatureRow& f = features.forecast_row;
    out.x_forecast.resize(5);
    out.x_forecast << 1.0, static_cast<double>(f.time_index), f.sie_last_month, f.sie_window,
        f.sie_today;
    return out;
}

ForecastDistribution forecast(const DailySeries& series, const ForecastSpec& spec) {
    if (is_valid(spec.forecast_date) &&
        month_end(spec.target_year, spec.target_month) < spec.forecast_date) {
        throw ArgumentError("forecast date " + to_string(spec.forecast_date) +
                            " falls after the target month ends");
    }

    const FeatureSet features = build_feature_rows(series, spec);
    const AssembledDesign ad = assemble_design(features);

    ForecastDistribution dist;
    dist.spec = spec;
    dist.effective_date = spec.effective_date();
    dist.fit = ols_fit(ad.design, ad.y);
    dist.mu = predict(dist.fit, ad.x_forecast);
    dist.sigma = dist.fit.sigma_hat;
    dist.interval_lo = dist.mu - 2.0 * dist.sigma;
    dist.interval_hi = dist.mu + 2.0 * dist.sigma;
    dist.warnings = features.warnings;
    return dist;
}

double density_at(const ForecastDistribution& dist, double x) {
    if (!dist.bootstrap_draws.empty()) {
        std::vector<double> sorted = dist.bootstrap_draws;
        std::sort(sorted.begin(), sorted.end());
        const auto b = static_cast<double>(sorted.size());
        double mean = 0.0;
        for (const double d : sorted) mean += d;
        mean /= b;
        double var = 0.0;
        for (const double d : sorted) var += (d - mean) * (d - mean);
        const double sd = std::sqrt(var / b);
        if (sd <= 0.0) {
            throw DegenerateDensityError(
                "all bootstrap draws coincide; use the point forecast instead");
        }
        const double h = 3.49 * sd * std::pow(b, -1.0 / 3.0);
        const double lo = sorted.front();
        if (x < lo || x >= sorted.back() + h) return 0.0;
        const double j = std::floor((x - lo) / h);
        const auto first = std::lower_bound(sorted.begin(), sorted.end(), lo + j * h);
        const auto last = std::lower_bound(sorted.begin(), sorted.end(), lo + (j + 1.0) * h);
        return static_cast<double>(last - first) / (b * h);
    }
    if (dist.sigma <= 0.0) {
        throw DegenerateDensityError("predictive density is degenerate (sigma = 0); use the "
                                     "point forecast mu instead");
    }
    const double z = (x - dist.mu) / dist.sigma;
    return std::exp(-0.5 * z * z) / (dist.sigma * std::sqrt(2.0 * std::numbers::pi));
}

int offset_from_month_end(const CivilDate& date, int year, int month) {
    return static_cast<int>(days_between(date, month_end(year, month)));
}

SweepResult sweep(const DailySeries& series, const SweepSpec& spec) {
    if (spec.first_offset > spec.last_offset) {
        throw ArgumentError("empty offset range: " + std::to_string(spec.first_offset) + ".." +
                            std::to_string(spec.last_offset));
    }
    if (spec.target_month < 1 || spec.target_month > 12) {
        throw ArgumentError("target_month must be in 1..12, got " +
                            std::to_string(spec.target_month));
    }

    const CivilDate end = month_end(spec.target_year, spec.target_month);

    SweepResult result;
    result.target_year = spec.target_year;
    result.target_month = spec.target_month;

    for (int offset = spec.first_offset; offset <= spec.last_offset; ++offset) {
        const CivilDate anchor = add_days(end, offset);

        ForecastSpec fspec;
        fspec.target_year = spec.target_year;
        fspec.target_month = spec.target_month;
        fspec.variant = WindowVariant::Trailing30;
        fspec.lag_days = spec.lag_days;
        fspec.first_training_year = spec.first_training_year;
        fspec.forecast_date =
            spec.basis == OffsetBasis::ForecastDate ? anchor : add_days(anchor, spec.lag_days);

        SweepEntry entry;
        entry.offset = offset;
        entry.forecast_date = fspec.forecast_date;
        entry.effective_date = fspec.effective_date();
        try {
            // Feeding only the prefix through the effective day makes
            // leakage structurally impossible for every entry.
            entry.forecast = forecast(truncated(series, entry.effective_date), fspec);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        result.entries.push_back(std::move(entry));
    }

    const CivilDate first_of_month{spec.target_year, spec.target_month, 1};
    if (series.covers(first_of_month) && series.covers(end)) {
        result.realized = month_average(series, spec.target_year, spec.target_month);
    }
    return result;
}

namespace {

void write_row(std::ostream& out, int offset, const CivilDate& effective,
               const ForecastDistribution& f, const std::optional<double>& realized) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%s,%.6f,%.6f,%.6f,%.6f,", offset,
                  to_string(effective).c_str(), f.mu, f.sigma, f.interval_lo, f.interval_hi);
    out << buf;
    if (realized) {
        std::snprintf(buf, sizeof buf, "%.6f", *realized);
        out << buf;
    }
    out << '\n';
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "offset,effective_date,mu,sigma,lo,hi,realized\n";
    for (const auto& entry : result.entries) {
        if (entry.ok()) {
            write_row(out, entry.offset, entry.effective_date, *entry.forecast, result.realized);
        } else {
            out << "# offset " << entry.offset << " failed: " << entry.error << '\n';
        }
    }
}

void write_forecast_csv(const std::vector<ForecastDistribution>& forecasts,
                        const std::optional<double>& realized, std::ostream& out) {
    out << "offset,effective_date,mu,sigma,lo,hi,realized\n";
    for (const auto& f : forecasts) {
        const int offset = offset_from_month_end(f.spec.forecast_date, f.spec.target_year,
                                                 f.spec.target_month);
        write_row(out, offset, f.effective_date, f, realized);
    }
}

}  // namespace sie
