#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sie/date.hpp"

namespace sie {

/// Gap-free daily extent series. Exactly one value per calendar day from
/// start_date through end_date(); filled days are flagged in imputed.
/// Immutable by convention after construction; safe to share across threads.
struct DailySeries {
    CivilDate start_date{};
    std::vector<double> values;       // million km^2
    std::vector<std::uint8_t> imputed;  // 1 where the value was filled
    std::string provenance;           // source fingerprint + imputation policy

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] bool empty() const noexcept { return values.empty(); }

    [[nodiscard]] CivilDate end_date() const {
        return add_days(start_date, static_cast<long>(values.size()) - 1);
    }

    [[nodiscard]] bool covers(const CivilDate& d) const {
        if (empty()) return false;
        const long i = days_between(d, start_date);
        return i >= 0 && i < static_cast<long>(values.size());
    }

    /// Value on a calendar day. Throws CoverageError outside the range.
    [[nodiscard]] double at(const CivilDate& d) const;

    /// True when the value on day d was imputed. Same range contract as at().
    [[nodiscard]] bool is_imputed(const CivilDate& d) const;
};

/// Prefix of a series ending at `last` (inclusive). Used to rebuild
/// forecasts from exactly the data available on a given day.
/// Throws CoverageError when last precedes the series start.
[[nodiscard]] DailySeries truncated(const DailySeries& series, const CivilDate& last);

/// Findings from a structural scan of a series. Carries results rather
/// than throwing; `ok` is false for an empty series or range violations.
struct ValidationReport {
    bool ok = false;
    std::string message;
    CivilDate start{};
    CivilDate end{};
    std::size_t n_days = 0;
    std::size_t n_imputed = 0;
    double min_extent = 0.0;
    double max_extent = 0.0;
    std::vector<std::string> violations;  // out-of-range days, must be empty
};

[[nodiscard]] ValidationReport validate_series(const DailySeries& series);

/// Human-readable multi-line rendering of a report.
[[nodiscard]] std::string format_report(const ValidationReport& report);

}  // namespace sie
