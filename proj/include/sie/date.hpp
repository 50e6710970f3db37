#pragma once

#include <compare>
#include <string>

namespace sie {

/// Proleptic Gregorian calendar date. Plain value type; arithmetic goes
/// through the serial-day conversion, which is exact over the range used
/// here (20th/21st century).
struct CivilDate {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;    // 1..days_in_month

    auto operator<=>(const CivilDate&) const = default;
};

/// Days in a calendar month, leap-aware.
[[nodiscard]] int days_in_month(int year, int month);

[[nodiscard]] bool is_leap_year(int year);

/// True when the triple names an existing calendar day.
[[nodiscard]] bool is_valid(const CivilDate& d);

/// Serial day count with epoch 1970-01-01 = 0 (negative before).
[[nodiscard]] long to_serial(const CivilDate& d);

/// Inverse of to_serial.
[[nodiscard]] CivilDate from_serial(long serial);

/// Calendar day `n` days after `d` (negative moves back).
[[nodiscard]] CivilDate add_days(const CivilDate& d, long n);

/// Signed day difference a - b.
[[nodiscard]] long days_between(const CivilDate& a, const CivilDate& b);

/// ISO-8601 "YYYY-MM-DD".
[[nodiscard]] std::string to_string(const CivilDate& d);

/// Parse "YYYY-MM-DD". Throws InvalidDateError on bad shape or a
/// nonexistent day.
[[nodiscard]] CivilDate parse_date(const std::string& text);

/// Last day of the month containing d.
[[nodiscard]] CivilDate month_end(int year, int month);

/// First day of the previous calendar month.
[[nodiscard]] CivilDate previous_month(int year, int month);

}  // namespace sie
