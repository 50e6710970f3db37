#include "sie/date.hpp"

#include <array>
#include <cstdio>

#include "sie/errors.hpp"

namespace sie {

bool is_leap_year(int year) {
    return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) {
        throw ArgumentError("month out of range: " + std::to_string(month));
    }
    if (month == 2 && is_leap_year(year)) {
        return 29;
    }
    return lengths[static_cast<size_t>(month - 1)];
}

bool is_valid(const CivilDate& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_month(d.year, d.month);
}

// Serial conversions follow the classic era-based civil-calendar algorithms;
// exact for all representable dates.
long to_serial(const CivilDate& d) {
    long y = d.year;
    const long m = d.month;
    const long day = d.day;
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

CivilDate from_serial(long serial) {
    long z = serial + 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned day = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                     static_cast<int>(day)};
}

CivilDate add_days(const CivilDate& d, long n) {
    return from_serial(to_serial(d) + n);
}

long days_between(const CivilDate& a, const CivilDate& b) {
    return to_serial(a) - to_serial(b);
}

std::string to_string(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

CivilDate parse_date(const std::string& text) {
    int y = 0;
    int m = 0;
    int day = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &day, &tail) != 3) {
        throw InvalidDateError("expected YYYY-MM-DD, got '" + text + "'");
    }
    const CivilDate d{y, m, day};
    if (m < 1 || m > 12 || !is_valid(d)) {
        throw InvalidDateError("no such calendar day: '" + text + "'");
    }
    return d;
}

CivilDate month_end(int year, int month) {
    return CivilDate{year, month, days_in_month(year, month)};
}

CivilDate previous_month(int year, int month) {
    if (month == 1) {
        return CivilDate{year - 1, 12, 1};
    }
    return CivilDate{year, month - 1, 1};
}

}  // namespace sie
