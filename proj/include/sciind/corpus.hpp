#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sciind {

/// Thrown for unrecoverable input problems (unreadable file, missing header column).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using CountryCode = std::string;

struct AuthorEntry {
  std::string author_id;
  std::vector<CountryCode> countries;  // deduplicated ISO-3166-1 alpha-2, may be empty

  bool operator==(const AuthorEntry&) const = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  std::string pub_type;
  std::vector<std::string> field_codes;  // non-empty, deduplicated, first-seen order
  std::vector<AuthorEntry> authors;      // non-empty
  std::int64_t citations_5y = 0;

  bool operator==(const PublicationRecord&) const = default;
};

struct YearWindow {
  int start = 1996;
  int end = 2013;

  bool contains(int year) const { return year >= start && year <= end; }
  bool operator==(const YearWindow&) const = default;
};

/// A line-anchored problem found while reading input. `line` is 1-based;
/// 0 means the diagnostic is not tied to a single line.
struct Diagnostic {
  std::size_t line = 0;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Immutable, pub_id-keyed collection of validated publications.
class Corpus {
 public:
  using Map = std::map<std::string, PublicationRecord, std::less<>>;

  Corpus() = default;
  /// Throws std::invalid_argument on duplicate pub_ids or records outside the window.
  Corpus(std::vector<PublicationRecord> records, YearWindow window = {});

  const Map& records() const { return records_; }
  const YearWindow& window() const { return window_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const PublicationRecord* find(std::string_view pub_id) const;

  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  bool operator==(const Corpus&) const = default;

 private:
  Map records_;
  YearWindow window_;
};

struct ParseOptions {
  YearWindow window;
  unsigned workers = 1;
};

struct ParseResult {
  Corpus corpus;
  std::vector<Diagnostic> diagnostics;  // sorted by line
  std::size_t unattributed = 0;         // accepted records with no resolvable country
};

/// Reads JSONL publications. Never throws on malformed content: bad lines are
/// reported as diagnostics and skipped, duplicates keep the first occurrence.
ParseResult parse_publications(std::istream& in, const ParseOptions& options = {});
ParseResult parse_publications(std::string_view text, const ParseOptions& options = {});

/// Validates one JSON object; returns the record or the rejection reason.
struct RecordOrError {
  std::optional<PublicationRecord> record;
  std::string error;
};
RecordOrError parse_publication_line(std::string_view line);

std::string to_json_line(const PublicationRecord& record);
void write_jsonl(std::ostream& out, const Corpus& corpus);

bool is_country_code(std::string_view code);

/// True when at least one author carries a country.
bool has_resolvable_country(const PublicationRecord& record);

}  // namespace sciind
