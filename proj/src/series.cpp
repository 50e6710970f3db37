#include "sie/series.hpp"

#include "sie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sie {

double DailySeries::at(const CivilDate& date) const {
    if (!covers(date)) {
        throw CoverageError("date " + to_string(date) + " outside series range " +
                            to_string(start_date) + ".." + to_string(end_date()));
    }
    return values[static_cast<std::size_t>(days_between(date, start_date))];
}

bool DailySeries::is_imputed(const CivilDate& date) const {
    if (!covers(date)) {
        throw CoverageError("date " + to_string(date) + " outside series range " +
                            to_string(start_date) + ".." + to_string(end_date()));
    }
    return imputed[static_cast<std::size_t>(days_between(date, start_date))] != 0;
}

DailySeries truncated(const DailySeries& series, const CivilDate& last) {
    if (series.empty() || last < series.start_date) {
        throw CoverageError("truncation date " + to_string(last) + " precedes series start " +
                            to_string(series.start_date));
    }
    if (last >= series.end_date()) return series;
    const auto n = static_cast<std::size_t>(days_between(last, series.start_date)) + 1;

    DailySeries out;
    out.start_date = series.start_date;
    out.values.assign(series.values.begin(), series.values.begin() + static_cast<std::ptrdiff_t>(n));
    out.imputed.assign(series.imputed.begin(), series.imputed.begin() + static_cast<std::ptrdiff_t>(n));
    out.provenance = series.provenance;
    return out;
}

ValidationReport validate_series(const DailySeries& series) {
    ValidationReport rep;
    rep.start = series.start_date;
    rep.end = series.end_date();
    rep.n_days = series.size();
    rep.ok = true;

    if (series.empty()) {
        rep.ok = false;
        rep.violations.push_back("series is empty");
        rep.message = "invalid: series is empty";
        return rep;
    }
    if (series.values.size() != series.imputed.size()) {
        rep.ok = false;
        rep.violations.push_back("imputation flags do not align with values");
    }

    rep.min_extent = series.values.front();
    rep.max_extent = series.values.front();
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        const double v = series.values[i];
        if (!std::isfinite(v)) {
            rep.ok = false;
            rep.violations.push_back("non-finite extent on " +
                                     to_string(add_days(series.start_date, static_cast<long>(i))));
            continue;
        }
        rep.min_extent = std::min(rep.min_extent, v);
        rep.max_extent = std::max(rep.max_extent, v);
        if (v < 0.0 || v > 20.0) {
            rep.ok = false;
            rep.violations.push_back("extent " + std::to_string(v) + " outside [0, 20] on " +
                                     to_string(add_days(series.start_date, static_cast<long>(i))));
        }
        if (i < series.imputed.size() && series.imputed[i] != 0) {
            ++rep.n_imputed;
        }
    }

    if (rep.ok) {
        std::ostringstream os;
        os << "ok: " << rep.n_days << " days " << to_string(rep.start) << ".." << to_string(rep.end)
           << ", " << rep.n_imputed << " imputed";
        rep.message = os.str();
    } else {
        rep.message = "invalid: " + rep.violations.front();
    }
    return rep;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream os;
    os << (report.ok ? "VALID" : "INVALID") << '\n';
    os << "  range:    " << to_string(report.start) << " .. " << to_string(report.end) << '\n';
    os << "  days:     " << report.n_days << '\n';
    os << "  imputed:  " << report.n_imputed << '\n';
    os << "  extent:   [" << report.min_extent << ", " << report.max_extent << "]\n";
    for (const auto& v : report.violations) {
        os << "  violation: " << v << '\n';
    }
    return os.str();
}

}  // namespace sie
