// Command-line front end: ingest a daily extent file, issue forecasts,
// run the day-by-day sweep, or backtest across years.
//
// Exit codes: 0 success, 1 data/computation error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sie/bootstrap.hpp"
#include "sie/errors.hpp"
#include "sie/evaluation.hpp"
#include "sie/figures.hpp"
#include "sie/forecast.hpp"
#include "sie/ingest.hpp"

namespace {

struct Options {
    std::string input;
    std::string out_dir = ".";
    int lag = 1;
    std::string variant = "month-to-date";
    std::uint64_t seed = 0;
    int bootstrap_draws = 0;
    std::string bootstrap_mode = "shift-only";

    int year = 0;
    int month = 9;
    std::vector<std::string> dates;
    std::string out_file;

    int offset_from = -120;
    int offset_to = 0;
    std::string offset_basis = "forecast-date";

    int year_from = 0;
    int year_to = 0;
    std::string template_date;
    std::string benchmark = "climatology";
};

sie::WindowVariant parse_variant(const std::string& s) {
    return s == "trailing30" ? sie::WindowVariant::Trailing30 : sie::WindowVariant::MonthToDate;
}

/// "MM-DD" within the given year.
sie::CivilDate parse_month_day(const std::string& s, int year) {
    int month = 0, day = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d-%d%c", &month, &day, &tail) != 2) {
        throw CLI::ValidationError("--date", "expected MM-DD, got '" + s + "'");
    }
    const sie::CivilDate date{year, month, day};
    if (!sie::is_valid(date)) {
        throw CLI::ValidationError("--date", "no such date " + s + " in " + std::to_string(year));
    }
    return date;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sie::Error("cannot write " + path.string());
    return out;
}

std::string run_stamp(const std::string& input_fingerprint, const std::string& detail) {
    return "input " + input_fingerprint + "; " + detail;
}

std::string input_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sie::ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sie::fingerprint(buf.str());
}

int cmd_ingest(const Options& opt) {
    sie::ImputationPolicy policy;
    const sie::DailySeries series = sie::load_series(opt.input, policy);
    const sie::ValidationReport report = sie::validate_series(series);
    std::cout << sie::format_report(report);

    const std::filesystem::path out_path =
        opt.out_file.empty() ? std::filesystem::path(opt.out_dir) / "series.csv"
                             : std::filesystem::path(opt.out_file);
    auto out = open_out(out_path);
    sie::write_canonical_csv(series, out);
    std::cout << "wrote " << out_path.string() << "\n";
    return report.ok ? 0 : 1;
}

int cmd_forecast(const Options& opt) {
    const sie::DailySeries series = sie::load_series(opt.input);

    std::vector<sie::ForecastDistribution> results;
    for (const auto& date_str : opt.dates) {
        sie::ForecastSpec spec;
        spec.target_year = opt.year;
        spec.target_month = opt.month;
        spec.forecast_date = parse_month_day(date_str, opt.year);
        spec.variant = parse_variant(opt.variant);
        spec.lag_days = opt.lag;
        results.push_back(sie::forecast(series, spec));

        const auto& f = results.back();
        std::printf("%s (data through %s): mu=%.6f sigma=%.6f interval=[%.6f, %.6f]\n",
                    sie::to_string(spec.forecast_date).c_str(),
                    sie::to_string(f.effective_date).c_str(), f.mu, f.sigma, f.interval_lo,
                    f.interval_hi);
        for (const auto& w : f.warnings) std::cout << "  warning: " << w << "\n";

        if (opt.bootstrap_draws > 0) {
            sie::BootstrapConfig cfg;
            cfg.draws = static_cast<std::size_t>(opt.bootstrap_draws);
            cfg.seed = opt.seed;
            cfg.mode = opt.bootstrap_mode == "refit" ? sie::BootstrapMode::Refit
                                                     : sie::BootstrapMode::ShiftOnly;
            const auto boot = sie::residual_bootstrap(series, spec, cfg);
            const auto [lo, hi] = sie::quantile_interval(boot, 0.95);
            std::printf("  bootstrap (%s, B=%d, seed=%llu): 95%% interval=[%.6f, %.6f]\n",
                        sie::to_string(cfg.mode), opt.bootstrap_draws,
                        static_cast<unsigned long long>(cfg.seed), lo, hi);
            auto draws_out = open_out(std::filesystem::path(opt.out_dir) /
                                      ("bootstrap_draws_" + date_str + ".csv"));
            sie::write_draws_csv(boot, draws_out);
            results.back().bootstrap_draws = boot.draws;
        }
    }

    std::optional<double> realized;
    const sie::CivilDate first{opt.year, opt.month, 1};
    if (series.covers(first) && series.covers(sie::month_end(opt.year, opt.month))) {
        realized = sie::month_average(series, opt.year, opt.month);
    }

    auto out = open_out(std::filesystem::path(opt.out_dir) / "forecast.csv");
    sie::write_forecast_csv(results, realized, out);
    std::cout << "wrote " << (std::filesystem::path(opt.out_dir) / "forecast.csv").string()
              << "\n";
    return 0;
}

int cmd_sweep(const Options& opt) {
    const sie::DailySeries series = sie::load_series(opt.input);
    const std::string fp = input_fingerprint(opt.input);

    sie::SweepSpec spec;
    spec.target_year = opt.year;
    spec.target_month = opt.month;
    spec.first_offset = opt.offset_from;
    spec.last_offset = opt.offset_to;
    spec.lag_days = opt.lag;
    spec.basis = opt.offset_basis == "effective-date" ? sie::OffsetBasis::EffectiveDate
                                                      : sie::OffsetBasis::ForecastDate;
    const sie::SweepResult result = sie::sweep(series, spec);

    const std::filesystem::path dir(opt.out_dir);
    {
        auto out = open_out(dir / "sweep.csv");
        sie::write_sweep_csv(result, out);
    }
    {
        auto out = open_out(dir / "density_grid.csv");
        sie::write_density_grid_csv(result, out);
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "sweep target=%04d-%02d offsets=%d..%d lag=%d basis=%s", opt.year, opt.month,
                  opt.offset_from, opt.offset_to, opt.lag, opt.offset_basis.c_str());
    {
        auto out = open_out(dir / "fan_chart.svg");
        sie::write_fan_chart_svg(result, out, run_stamp(fp, detail));
    }

    // Overlay: the four 10th-of-the-month forecasts preceding the target
    // month's end, when they landed inside the sweep range.
    std::vector<sie::ForecastDistribution> overlay;
    for (int back = 3; back >= 0; --back) {
        int m = opt.month - back;
        int y = opt.year;
        while (m < 1) {
            m += 12;
            --y;
        }
        const int offset = sie::offset_from_month_end(sie::CivilDate{y, m, 10}, opt.year,
                                                      opt.month);
        for (const auto& entry : result.entries) {
            if (entry.offset == offset && entry.ok()) overlay.push_back(*entry.forecast);
        }
    }
    {
        auto out = open_out(dir / "density_overlay.svg");
        sie::write_density_overlay_svg(overlay, result.realized, out, run_stamp(fp, detail));
    }

    const std::size_t total = result.entries.size();
    const std::size_t ok = result.n_ok();
    std::printf("sweep %04d-%02d: %zu/%zu offsets succeeded", opt.year, opt.month, ok, total);
    if (result.realized) std::printf(", realized=%.6f", *result.realized);
    std::printf("\nwrote %s/{sweep.csv,density_grid.csv,fan_chart.svg,density_overlay.svg}\n",
                opt.out_dir.c_str());

    return ok * 10 >= total * 9 ? 0 : 1;
}

int cmd_backtest(const Options& opt) {
    const sie::DailySeries series = sie::load_series(opt.input);

    sie::DateTemplate tmpl;
    {
        int month = 0, day = 0;
        char tail = 0;
        if (std::sscanf(opt.template_date.c_str(), "%d-%d%c", &month, &day, &tail) != 2 ||
            month < 1 || month > 12 || day < 1 || day > 31) {
            throw CLI::ValidationError("--date", "expected MM-DD, got '" + opt.template_date +
                                                     "'");
        }
        tmpl.month = month;
        tmpl.day = day;
    }
    tmpl.variant = parse_variant(opt.variant);
    tmpl.lag_days = opt.lag;
    tmpl.target_month = opt.month;

    const sie::BacktestResult model = sie::backtest(series, opt.year_from, opt.year_to, tmpl);
    for (const auto& s : model.skipped) std::cout << "skipped " << s << "\n";

    // Benchmark rows reuse the model's scored years so the comparison is
    // apples to apples.
    const sie::BenchmarkKind kind = opt.benchmark == "trend-only"
                                        ? sie::BenchmarkKind::TrendOnly
                                    : opt.benchmark == "last-month-persistence"
                                        ? sie::BenchmarkKind::LastMonthPersistence
                                        : sie::BenchmarkKind::Climatology;
    sie::BacktestResult bench;
    for (const auto& row : model.rows) {
        sie::ForecastSpec spec;
        spec.target_year = row.target_year;
        spec.target_month = opt.month;
        spec.forecast_date = row.forecast_date;
        spec.variant = tmpl.variant;
        spec.lag_days = opt.lag;
        const auto f = sie::benchmark_forecast(sie::truncated(series, spec.effective_date()),
                                               spec, kind);
        sie::BacktestRow brow;
        brow.target_year = row.target_year;
        brow.forecast_date = row.forecast_date;
        brow.mu = f.mu;
        brow.sigma = f.sigma;
        brow.realized = row.realized;
        brow.error = brow.mu - brow.realized;
        brow.interval_hit = brow.realized >= brow.mu - 2.0 * brow.sigma &&
                            brow.realized <= brow.mu + 2.0 * brow.sigma;
        bench.rows.push_back(brow);
    }

    const std::filesystem::path dir(opt.out_dir);
    {
        auto out = open_out(dir / "backtest.csv");
        sie::write_backtest_csv(model, out);
    }
    {
        auto out = open_out(dir / "benchmark_backtest.csv");
        sie::write_backtest_csv(bench, out);
    }

    if (model.rows.empty()) {
        std::cout << "no scoreable years\n";
        return 1;
    }
    const sie::SkillReport rep = sie::skill_score(model.rows, bench.rows, opt.benchmark);
    std::printf("years=%zu model_mse=%.6f %s_mse=%.6f skill=%.6f\n", rep.n_years, rep.model_mse,
                rep.benchmark_name.c_str(), rep.benchmark_mse, rep.skill);
    std::printf("wrote %s/{backtest.csv,benchmark_backtest.csv}\n", opt.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monthly-average sea ice extent forecasting"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--input", opt.input, "daily extent CSV (raw layout or canonical)")
        ->required();
    app.add_option("--out-dir", opt.out_dir, "directory for output files");
    app.add_option("--lag", opt.lag, "data availability lag in days")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--variant", opt.variant, "recent-window covariate")
        ->check(CLI::IsMember({"month-to-date", "trailing30"}));
    app.add_option("--seed", opt.seed, "random seed for bootstrap draws");
    app.add_option("--bootstrap-draws", opt.bootstrap_draws,
                   "bootstrap draw count (0 disables the bootstrap)");
    app.add_option("--bootstrap-mode", opt.bootstrap_mode, "resampling scheme")
        ->check(CLI::IsMember({"shift-only", "refit"}));

    auto* ingest = app.add_subcommand("ingest", "parse, impute, validate, write canonical CSV");
    ingest->add_option("--out", opt.out_file, "canonical CSV path (default out-dir/series.csv)");

    auto* forecast = app.add_subcommand("forecast", "forecast a target month from given dates");
    forecast->add_option("--year", opt.year, "target year")->required();
    forecast->add_option("--month", opt.month, "target month")->check(CLI::Range(1, 12));
    forecast->add_option("--dates", opt.dates, "issue dates, MM-DD")
        ->required()
        ->delimiter(',');

    auto* sweep = app.add_subcommand("sweep", "day-by-day trailing-window forecasts");
    sweep->add_option("--year", opt.year, "target year")->required();
    sweep->add_option("--month", opt.month, "target month")->check(CLI::Range(1, 12));
    sweep->add_option("--from", opt.offset_from, "first offset (days before month end)");
    sweep->add_option("--to", opt.offset_to, "last offset");
    sweep->add_option("--offset-basis", opt.offset_basis,
                      "whether offsets anchor the issue date or the data date")
        ->check(CLI::IsMember({"forecast-date", "effective-date"}));

    auto* backtest = app.add_subcommand("backtest", "leave-future-out evaluation across years");
    backtest->add_option("--year-from", opt.year_from, "first target year")->required();
    backtest->add_option("--year-to", opt.year_to, "last target year")->required();
    backtest->add_option("--date", opt.template_date, "issue date template, MM-DD")->required();
    backtest->add_option("--benchmark", opt.benchmark, "baseline for the skill score")
        ->check(CLI::IsMember({"climatology", "trend-only", "last-month-persistence"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(opt);
        if (app.got_subcommand(forecast)) return cmd_forecast(opt);
        if (app.got_subcommand(sweep)) {
            if (opt.offset_from > opt.offset_to) {
                std::cerr << "error: empty offset range " << opt.offset_from << ".."
                          << opt.offset_to << "\n";
                return 2;
            }
            return cmd_sweep(opt);
        }
        if (app.got_subcommand(backtest)) return cmd_backtest(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sie::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
