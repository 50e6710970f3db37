#include "sie/ingest.hpp"

#include "sie/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace sie {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Splits a CSV row on commas, except inside [...] (the source-tag field
/// carries a bracketed list that may itself contain commas).
std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    int bracket_depth = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '[') ++bracket_depth;
        if (c == ']' && bracket_depth > 0) --bracket_depth;
        if (c == ',' && bracket_depth == 0) {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    fields.push_back(line.substr(start));
    return fields;
}

long parse_long_field(std::string_view raw, const char* what, long line_no) {
    const std::string_view s = trim(raw);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(std::string("malformed ") + what + " field '" + std::string(raw) + "'",
                         line_no);
    }
    return value;
}

double parse_double_field(std::string_view raw, const char* what, long line_no) {
    const std::string_view s = trim(raw);
    // from_chars<double> is still flaky across standard libraries; strtod on a
    // bounded copy is portable and just as strict with the full-match check.
    const std::string buf(s);
    char* end = nullptr;
    const double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        throw ParseError(std::string("malformed ") + what + " field '" + std::string(raw) + "'",
                         line_no);
    }
    return value;
}

}  // namespace

std::vector<RawRecord> parse_sea_ice_index(std::istream& in) {
    std::vector<RawRecord> records;
    std::unordered_set<long> seen_serials;
    std::string line;
    long line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string_view trimmed = trim(line);
        if (trimmed.empty()) continue;
        if (!header_seen) {
            // First non-empty line is the header row; tolerate arbitrary
            // column spacing but insist it is not itself a data row.
            header_seen = true;
            if (trimmed.find("Year") == std::string_view::npos) {
                throw ParseError("missing header row (expected Year, Month, Day, ... columns)",
                                 line_no);
            }
            continue;
        }

        const auto fields = split_row(line);
        if (fields.size() < 4) {
            throw ParseError("expected at least 4 comma-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }

        RawRecord rec;
        const long year = parse_long_field(fields[0], "Year", line_no);
        const long month = parse_long_field(fields[1], "Month", line_no);
        const long day = parse_long_field(fields[2], "Day", line_no);
        const CivilDate date{static_cast<int>(year), static_cast<int>(month),
                             static_cast<int>(day)};
        if (!is_valid(date)) {
            throw InvalidDateError("invalid calendar date " + std::to_string(year) + "-" +
                                       std::to_string(month) + "-" + std::to_string(day),
                                   line_no);
        }
        rec.date = date;

        const std::string_view extent_raw = trim(fields[3]);
        if (!extent_raw.empty()) {
            const double extent = parse_double_field(fields[3], "Extent", line_no);
            // Negative extents are the file's missing-data sentinel.
            if (extent >= 0.0) rec.extent = extent;
        }
        if (fields.size() >= 5 && !trim(fields[4]).empty()) {
            rec.missing_flag = parse_double_field(fields[4], "Missing", line_no);
        }
        if (fields.size() >= 6) {
            rec.source_tag = std::string(trim(fields[5]));
        }

        if (!seen_serials.insert(to_serial(rec.date)).second) {
            throw DuplicateDateError("duplicate date " + to_string(rec.date), line_no);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

DailySeries impute_missing(const std::vector<RawRecord>& records, const ImputationPolicy& policy,
                           std::string_view source_fingerprint) {
    std::vector<std::pair<CivilDate, double>> observed;
    observed.reserve(records.size());
    for (const auto& rec : records) {
        if (policy.cutoff && rec.date < *policy.cutoff) continue;
        if (rec.extent) observed.emplace_back(rec.date, *rec.extent);
    }
    if (observed.size() < 2) {
        throw ArgumentError("need at least two observed extents to build a series, got " +
                            std::to_string(observed.size()));
    }
    if (!std::is_sorted(observed.begin(), observed.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; })) {
        throw ArgumentError("records must be sorted by date");
    }

    DailySeries out;
    out.start_date = observed.front().first;
    const auto n_days = static_cast<std::size_t>(
        days_between(observed.back().first, observed.front().first) + 1);
    out.values.resize(n_days, 0.0);
    out.imputed.assign(n_days, 1);

    for (const auto& [date, extent] : observed) {
        const auto i = static_cast<std::size_t>(days_between(date, out.start_date));
        out.values[i] = extent;
        out.imputed[i] = 0;
    }

    // Fill the runs between consecutive observed days. For a single missing
    // day this is exactly the mean of the two neighbors.
    for (std::size_t o = 1; o < observed.size(); ++o) {
        const long gap = days_between(observed[o].first, observed[o - 1].first) - 1;
        if (gap <= 0) continue;
        if (gap > policy.max_gap_days) {
            throw GapError("unfillable gap of " + std::to_string(gap) + " days: " +
                           to_string(add_days(observed[o - 1].first, 1)) + ".." +
                           to_string(add_days(observed[o].first, -1)) + " exceeds max_gap_days=" +
                           std::to_string(policy.max_gap_days));
        }
        const double a = observed[o - 1].second;
        const double b = observed[o].second;
        const auto base = static_cast<std::size_t>(
            days_between(observed[o - 1].first, out.start_date));
        if (gap == 1) {
            // The one-day rule is the exact adjacent mean, not the general
            // interpolation formula, which can differ in the last ulp.
            out.values[base + 1] = (a + b) / 2.0;
        } else {
            for (long i = 1; i <= gap; ++i) {
                out.values[base + static_cast<std::size_t>(i)] =
                    a + (b - a) * static_cast<double>(i) / static_cast<double>(gap + 1);
            }
        }
    }

    std::string prov = "source=";
    prov += source_fingerprint.empty() ? "unknown" : std::string(source_fingerprint);
    prov += ";policy=" + policy.id;
    out.provenance = std::move(prov);
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string fingerprint(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

void write_canonical_csv(const DailySeries& series, std::ostream& out) {
    out << "date,extent,imputed\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s,%.6f,%d",
                      to_string(add_days(series.start_date, static_cast<long>(i))).c_str(),
                      series.values[i], series.imputed[i] != 0 ? 1 : 0);
        out << buf << '\n';
    }
}

DailySeries parse_canonical_csv(std::istream& in) {
    DailySeries out;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    CivilDate expected{};

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (!looks_canonical(line)) {
                throw ParseError("expected header 'date,extent,imputed'", line_no);
            }
            continue;
        }
        const auto fields = split_row(line);
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
        }
        CivilDate date{};
        try {
            date = parse_date(std::string(trim(fields[0])));
        } catch (const InvalidDateError& e) {
            throw InvalidDateError(e.what(), line_no);
        }
        const double extent = parse_double_field(fields[1], "extent", line_no);
        const long flag = parse_long_field(fields[2], "imputed", line_no);
        if (flag != 0 && flag != 1) {
            throw ParseError("imputed flag must be 0 or 1, got " + std::to_string(flag), line_no);
        }

        if (out.values.empty()) {
            out.start_date = date;
        } else if (!(date == expected)) {
            throw ParseError("dates must be consecutive: expected " + to_string(expected) +
                                 ", got " + to_string(date),
                             line_no);
        }
        expected = add_days(date, 1);
        out.values.push_back(extent);
        out.imputed.push_back(flag == 1 ? 1 : 0);
    }
    if (out.values.empty()) {
        throw ParseError("no data rows");
    }
    out.provenance = "source=canonical-csv;policy=as-recorded";
    return out;
}

bool looks_canonical(std::string_view first_line) {
    std::string_view s = trim(first_line);
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s == "date,extent,imputed";
}

DailySeries load_series(const std::string& path, const ImputationPolicy& policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::string first_line = content.substr(0, content.find('\n'));

    std::istringstream stream(content);
    if (looks_canonical(first_line)) {
        return parse_canonical_csv(stream);
    }
    auto records = parse_sea_ice_index(stream);
    return impute_missing(records, policy, fingerprint(content));
}

}  // namespace sie
