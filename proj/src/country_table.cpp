#include "sciind/country_table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <map>

namespace sciind {

namespace {

std::string strip(std::string_view s) {
  const auto* ws = " \t\r";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string_view::npos) return {};
  return std::string(s.substr(a, s.find_last_not_of(ws) - a + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<double> to_number(const std::string& cell) {
  double v = 0;
  const auto* first = cell.data();
  const auto* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::vector<std::string> read_csv_record(std::string_view text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          cur += '"';
          pos += 2;
          continue;
        }
        quoted = false;
      } else {
        cur += c;
      }
      ++pos;
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      fields.push_back(std::move(cur));
      return fields;
    } else {
      cur += c;
    }
    ++pos;
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CountryTable parse_country_table(std::string_view text) {
  CountryTable table;
  std::size_t pos = 0;
  std::size_t counted = 0;
  std::size_t line_no = 1;
  auto line_at = [&](std::size_t p) {
    line_no += static_cast<std::size_t>(std::count(text.begin() + counted, text.begin() + p, '\n'));
    counted = p;
    return line_no;
  };

  // Comment preamble.
  while (pos < text.size() && text[pos] == '#') {
    const auto nl = text.find('\n', pos);
    const auto comment = lower(strip(text.substr(pos + 1, nl == std::string_view::npos ? nl : nl - pos - 1)));
    if (comment.rfind("units:", 0) == 0) {
      const auto unit = strip(comment.substr(6));
      if (unit == "percent")
        table.units = ShareUnits::Percent;
      else if (unit == "fraction")
        table.units = ShareUnits::Fraction;
      else
        throw InputError("unknown share units '" + unit + "'");
    }
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
  }

  if (pos >= text.size()) throw InputError("country table has no header row");
  const auto header = read_csv_record(text, pos);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(strip(header[i]), i);
  for (auto name : kCountryColumns)
    if (!column.contains(std::string(name)))
      throw InputError("country table missing required column '" + std::string(name) + "'");

  const double share_scale = table.units == ShareUnits::Percent ? 0.01 : 1.0;

  while (pos < text.size()) {
    const std::size_t start_line = line_at(pos);
    auto cells = read_csv_record(text, pos);
    if (cells.size() == 1 && strip(cells[0]).empty()) continue;

    auto cell = [&](std::string_view name) -> std::string {
      const auto i = column.at(std::string(name));
      return i < cells.size() ? strip(cells[i]) : std::string{};
    };
    auto diag = [&](std::string msg) { table.diagnostics.push_back({start_line, std::move(msg)}); };

    CountryIndicatorRow row;
    row.country_code = cell("country_code");
    row.country_name = cell("country_name");
    if (!is_country_code(row.country_code)) {
      diag("invalid country code '" + row.country_code + "', row skipped");
      continue;
    }

    auto numeric = [&](std::string_view name, double scale, double lo, double hi, bool open_lo) {
      const auto raw = cell(name);
      if (raw.empty()) return std::optional<double>{};
      auto v = to_number(raw);
      if (!v) {
        diag(std::string(name) + ": non-numeric value '" + raw + "' treated as missing");
        return std::optional<double>{};
      }
      const double x = *v * scale;
      if (x < lo || x > hi || (open_lo && x == lo)) {
        diag(std::string(name) + ": value " + raw + " out of range, treated as missing");
        return std::optional<double>{};
      }
      return std::optional<double>{x};
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    row.frac_fwci = numeric("frac_fwci", 1.0, 0.0, inf, true);
    row.gbard = numeric("gbard", 1.0, 0.0, inf, false);
    row.frac_pubs = numeric("frac_pubs", 1.0, 0.0, inf, false);
    row.int_pct = numeric("int_pct", 1.0, 0.0, 100.0, false);
    row.new_inflows = numeric("new_inflows", share_scale, 0.0, 1.0, false);
    row.returnees = numeric("returnees", share_scale, 0.0, 1.0, false);
    row.mobile = numeric("mobile", share_scale, 0.0, 1.0, false);
    row.outflows = numeric("outflows", share_scale, 0.0, 1.0, false);
    table.rows.push_back(std::move(row));
  }
  return table;
}

CountryTable parse_country_table(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_country_table(std::string_view(text));
}

}  // namespace sciind
