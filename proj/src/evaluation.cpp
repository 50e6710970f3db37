#include "sie/evaluation.hpp"

#include "sie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace sie {

BacktestResult backtest(const DailySeries& series, int first_year, int last_year,
                        const DateTemplate& tmpl) {
    BacktestResult out;
    for (int year = first_year; year <= last_year; ++year) {
        const std::string tag = std::to_string(year) + ": ";
        if (year - tmpl.first_training_year < 10) {
            out.skipped.push_back(tag + "fewer than 10 training years");
            continue;
        }
        const CivilDate forecast_date{year, tmpl.month, tmpl.day};
        if (!is_valid(forecast_date)) {
            out.skipped.push_back(tag + "no such date " + std::to_string(tmpl.month) + "-" +
                                  std::to_string(tmpl.day) + " that year");
            continue;
        }

        ForecastSpec spec;
        spec.target_year = year;
        spec.target_month = tmpl.target_month;
        spec.forecast_date = forecast_date;
        spec.variant = tmpl.variant;
        spec.lag_days = tmpl.lag_days;
        spec.first_training_year = tmpl.first_training_year;

        BacktestRow row;
        row.target_year = year;
        row.forecast_date = forecast_date;
        try {
            row.realized = month_average(series, year, tmpl.target_month);
            // Score only forecasts rebuilt from the data available on the
            // effective day, so leakage is impossible by construction.
            const ForecastDistribution f =
                forecast(truncated(series, spec.effective_date()), spec);
            row.mu = f.mu;
            row.sigma = f.sigma;
        } catch (const Error& e) {
            out.skipped.push_back(tag + e.what());
            continue;
        }
        row.error = row.mu - row.realized;
        row.interval_hit =
            row.realized >= row.mu - 2.0 * row.sigma && row.realized <= row.mu + 2.0 * row.sigma;
        out.rows.push_back(row);
    }
    return out;
}

SkillReport skill_score(const std::vector<BacktestRow>& model_rows,
                        const std::vector<BacktestRow>& benchmark_rows,
                        const std::string& benchmark_name) {
    if (model_rows.empty() || model_rows.size() != benchmark_rows.size()) {
        throw ArgumentError("skill needs the same nonempty year set on both sides");
    }
    for (std::size_t i = 0; i < model_rows.size(); ++i) {
        if (model_rows[i].target_year != benchmark_rows[i].target_year) {
            throw ArgumentError("model and benchmark rows disagree on years at position " +
                                std::to_string(i));
        }
    }

    SkillReport rep;
    rep.n_years = model_rows.size();
    rep.benchmark_name = benchmark_name;
    for (std::size_t i = 0; i < model_rows.size(); ++i) {
        rep.model_mse += model_rows[i].error * model_rows[i].error;
        rep.benchmark_mse += benchmark_rows[i].error * benchmark_rows[i].error;
    }
    rep.model_mse /= static_cast<double>(rep.n_years);
    rep.benchmark_mse /= static_cast<double>(rep.n_years);
    if (rep.benchmark_mse == 0.0) {
        throw UndefinedSkillError("benchmark MSE is zero; skill is undefined");
    }
    rep.skill = 1.0 - rep.model_mse / rep.benchmark_mse;
    return rep;
}

ForecastDistribution benchmark_forecast(const DailySeries& series, const ForecastSpec& spec,
                                        BenchmarkKind kind) {
    const FeatureSet features = build_feature_rows(series, spec);
    const auto n = static_cast<Eigen::Index>(features.training.size());

    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const FeatureRow& row = features.training[static_cast<std::size_t>(i)];
        if (!row.target) {
            throw ArgumentError("training row for year " + std::to_string(row.year) +
                                " has no target");
        }
        y[i] = *row.target;
    }

    ForecastDistribution dist;
    dist.spec = spec;
    dist.effective_date = spec.effective_date();
    dist.warnings = features.warnings;

    if (kind == BenchmarkKind::LastMonthPersistence) {
        // No estimated parameters: the previous month's average carries
        // forward, and sigma is the RMS of the historical carry-forward
        // errors (divisor n, since k = 0).
        Eigen::VectorXd residuals(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            residuals[i] = y[i] - features.training[static_cast<std::size_t>(i)].sie_last_month;
        }
        dist.mu = features.forecast_row.sie_last_month;
        dist.fit.beta.resize(0);
        dist.fit.residuals = residuals;
        dist.fit.n = n;
        dist.fit.k = 0;
        dist.fit.sigma_hat = std::sqrt(residuals.squaredNorm() / static_cast<double>(n));
        const double tss = (y.array() - y.mean()).matrix().squaredNorm();
        dist.fit.r2_adj =
            n > 1 && tss > 0.0
                ? 1.0 - (residuals.squaredNorm() / static_cast<double>(n)) /
                            (tss / static_cast<double>(n - 1))
                : 0.0;
    } else {
        DesignMatrix dm;
        if (kind == BenchmarkKind::Climatology) {
            dm.col_names = {"intercept"};
            dm.X = Eigen::MatrixXd::Ones(n, 1);
        } else {
            dm.col_names = {"intercept", "time_index"};
            dm.X.resize(n, 2);
            for (Eigen::Index i = 0; i < n; ++i) {
                dm.X(i, 0) = 1.0;
                dm.X(i, 1) = static_cast<double>(
                    features.training[static_cast<std::size_t>(i)].time_index);
            }
        }
        dist.fit = ols_fit(dm, y);
        Eigen::VectorXd x(dm.X.cols());
        x[0] = 1.0;
        if (x.size() > 1) x[1] = static_cast<double>(features.forecast_row.time_index);
        dist.mu = predict(dist.fit, x);
    }

    dist.sigma = dist.fit.sigma_hat;
    dist.interval_lo = dist.mu - 2.0 * dist.sigma;
    dist.interval_hi = dist.mu + 2.0 * dist.sigma;
    return dist;
}

void write_backtest_csv(const BacktestResult& result, std::ostream& out) {
    out << "target_year,forecast_date,mu,sigma,lo,hi,realized,error,interval_hit\n";
    for (const auto& row : result.rows) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%d,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d", row.target_year,
                      to_string(row.forecast_date).c_str(), row.mu, row.sigma,
                      row.mu - 2.0 * row.sigma, row.mu + 2.0 * row.sigma, row.realized, row.error,
                      row.interval_hit ? 1 : 0);
        out << buf << '\n';
    }
    for (const auto& s : result.skipped) {
        out << "# skipped " << s << '\n';
    }
}

}  // namespace sie
