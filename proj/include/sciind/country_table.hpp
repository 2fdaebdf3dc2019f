#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sciind/corpus.hpp"

namespace sciind {

/// One country's aggregate indicators. Every numeric field may be missing.
/// Mobility shares are stored as fractions in [0,1] whatever the file units.
struct CountryIndicatorRow {
  CountryCode country_code;
  std::string country_name;
  std::optional<double> frac_fwci;
  std::optional<double> gbard;      // millions, constant PPP
  std::optional<double> frac_pubs;
  std::optional<double> int_pct;    // percent in [0,100]
  std::optional<double> new_inflows;
  std::optional<double> returnees;
  std::optional<double> mobile;
  std::optional<double> outflows;

  bool operator==(const CountryIndicatorRow&) const = default;
};

enum class ShareUnits { Fraction, Percent };

struct CountryTable {
  std::vector<CountryIndicatorRow> rows;  // file order
  std::vector<Diagnostic> diagnostics;
  ShareUnits units = ShareUnits::Fraction;
};

inline constexpr std::array<std::string_view, 10> kCountryColumns = {
    "country_code", "country_name", "frac_fwci", "gbard",  "frac_pubs",
    "int_pct",      "new_inflows",  "returnees", "mobile", "outflows"};

/// Parses the country-indicator CSV (RFC 4180 quoting). Leading `#` lines are
/// comments; `# units: percent` declares mobility shares in percent.
/// Throws InputError when the header is absent or lacks a required column.
CountryTable parse_country_table(std::istream& in);
CountryTable parse_country_table(std::string_view text);

/// Splits one CSV record. Handles quoted fields with embedded commas, doubled
/// quotes and newlines; `pos` is advanced past the record terminator.
std::vector<std::string> read_csv_record(std::string_view text, std::size_t& pos);

/// Quotes a CSV field when it contains a delimiter, quote or line break.
std::string csv_escape(std::string_view field);

}  // namespace sciind
