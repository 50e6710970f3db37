#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sie/date.hpp"
#include "sie/series.hpp"

namespace sie {

/// One data row of the daily-extent source file. `extent` is absent when
/// the row carries a blank or negative sentinel.
struct RawRecord {
    CivilDate date{};
    std::optional<double> extent;  // million km^2, within [0, 20] when present
    double missing_flag = 0.0;     // million km^2 of missing coverage as reported
    std::string source_tag;        // free-text provenance, preserved verbatim
};

/// How gaps between observed days are filled.
struct ImputationPolicy {
    int max_gap_days = 45;              // longest fillable run of missing days
    std::optional<CivilDate> cutoff = CivilDate{1979, 1, 1};  // drop earlier rows
    std::string id = "adjacent-linear-v1";
};

///// Parse the daily sea-ice-extent CSV layout: one header row, then
/// whitespace-padded columns Year, Month, Day, Extent, Missing, Source Data.
///
/// Blank or negative Extent fields become records with extent absent.
/// Throws ParseError (malformed numeric field, short row),
/// InvalidDateError, or DuplicateDateError; all carry the line number.
[[nodiscard]] std::vector<RawRecord> parse_sea_ice_index(std::istream& in);

/// Build a gap-free series from sorted records.
///
/// Single-day gaps get the mean of the two adjacent observed days; longer
/// gaps are filled by linear interpolation between the nearest observed
/// neighbors. Every filled day is flagged. The series spans exactly the
/// first through last observed day at or after the policy cutoff; missing
/// leading/trailing days are never invented.
///
/// `source_fingerprint` is recorded in the provenance string alongside the
/// policy id.
///
/// Throws ArgumentError (unsorted or fewer than two observed records) and
/// GapError (a gap longer than policy.max_gap_days, naming the interval).
[[nodiscard]] DailySeries impute_missing(const std::vector<RawRecord>& records,
                                         const ImputationPolicy& policy = {},
                                         std::string_view source_fingerprint = "");

/// 64-bit FNV-1a of a byte string; used to fingerprint input files.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

/// Fingerprint as "fnv1a:<16 hex digits>".
[[nodiscard]] std::string fingerprint(std::string_view bytes);

/// Canonical series CSV: header "date,extent,imputed", ISO dates, extents
/// at 6 decimal places. Re-parsing reproduces the series at the stored
/// precision; serialize-parse-serialize is byte-identical.
void write_canonical_csv(const DailySeries& series, std::ostream& out);

[[nodiscard]] DailySeries parse_canonical_csv(std::istream& in);

/// True when the first line looks like the canonical CSV header rather
/// than the raw source layout.
[[nodiscard]] bool looks_canonical(std::string_view first_line);

/// Load a series from a file path, dispatching on the header line between
/// the raw source layout (parsed and imputed under `policy`) and the
/// canonical CSV (read back as-is).
[[nodiscard]] DailySeries load_series(const std::string& path,
                                      const ImputationPolicy& policy = {});

}  // namespace sie
