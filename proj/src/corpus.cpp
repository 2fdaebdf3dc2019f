#include "sciind/corpus.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <ostream>

#include <json.hpp>

#include "sciind/parallel.hpp"

namespace sciind {

namespace {

using nlohmann::json;

template <typename T>
void dedupe_in_place(std::vector<T>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (auto& x : v)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  v = std::move(out);
}

bool non_empty_string(const json& j) { return j.is_string() && !j.get_ref<const std::string&>().empty(); }

}  // namespace

bool is_country_code(std::string_view code) {
  return code.size() == 2 && code[0] >= 'A' && code[0] <= 'Z' && code[1] >= 'A' && code[1] <= 'Z';
}

bool has_resolvable_country(const PublicationRecord& record) {
  return std::any_of(record.authors.begin(), record.authors.end(),
                     [](const AuthorEntry& a) { return !a.countries.empty(); });
}

Corpus::Corpus(std::vector<PublicationRecord> records, YearWindow window) : window_(window) {
  for (auto& r : records) {
    if (!window_.contains(r.year))
      throw std::invalid_argument("publication " + r.pub_id + " outside observation window");
    if (records_.contains(r.pub_id)) throw std::invalid_argument("duplicate pub_id " + r.pub_id);
    auto id = r.pub_id;
    records_.emplace(std::move(id), std::move(r));
  }
}

const PublicationRecord* Corpus::find(std::string_view pub_id) const {
  auto it = records_.find(pub_id);
  return it == records_.end() ? nullptr : &it->second;
}

RecordOrError parse_publication_line(std::string_view line) {
  const json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return {std::nullopt, "malformed JSON"};
  if (!j.is_object()) return {std::nullopt, "line is not a JSON object"};

  PublicationRecord rec;
  auto field = [&](const char* key) -> const json* {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
  };

  const json* id = field("pub_id");
  if (!id || !non_empty_string(*id)) return {std::nullopt, "missing or empty pub_id"};
  rec.pub_id = id->get<std::string>();

  const json* year = field("year");
  if (!year || !year->is_number_integer()) return {std::nullopt, "year must be an integer"};
  rec.year = year->get<int>();

  const json* type = field("pub_type");
  if (!type || !non_empty_string(*type)) return {std::nullopt, "missing or empty pub_type"};
  rec.pub_type = type->get<std::string>();

  const json* fields = field("field_codes");
  if (!fields || !fields->is_array() || fields->empty())
    return {std::nullopt, "field_codes must be a non-empty array"};
  for (const auto& f : *fields) {
    if (!non_empty_string(f)) return {std::nullopt, "field code must be a non-empty string"};
    rec.field_codes.push_back(f.get<std::string>());
  }
  dedupe_in_place(rec.field_codes);

  const json* authors = field("authors");
  if (!authors || !authors->is_array() || authors->empty())
    return {std::nullopt, "authors must be a non-empty array"};
  for (const auto& a : *authors) {
    if (!a.is_object()) return {std::nullopt, "author entry must be an object"};
    auto aid = a.find("author_id");
    if (aid == a.end() || !non_empty_string(*aid)) return {std::nullopt, "missing or empty author_id"};
    AuthorEntry entry{aid->get<std::string>(), {}};
    if (auto c = a.find("countries"); c != a.end()) {
      if (!c->is_array()) return {std::nullopt, "countries must be an array"};
      for (const auto& code : *c) {
        if (!code.is_string() || !is_country_code(code.get_ref<const std::string&>()))
          return {std::nullopt, "invalid country code " + code.dump()};
        entry.countries.push_back(code.get<std::string>());
      }
      dedupe_in_place(entry.countries);
    }
    rec.authors.push_back(std::move(entry));
  }

  const json* cites = field("citations_5y");
  if (!cites || !cites->is_number_integer()) return {std::nullopt, "citations_5y must be an integer"};
  if (cites->is_number_unsigned()) {
    rec.citations_5y = static_cast<std::int64_t>(cites->get<std::uint64_t>());
  } else {
    rec.citations_5y = cites->get<std::int64_t>();
    if (rec.citations_5y < 0) return {std::nullopt, "negative citation count"};
  }
  return {std::move(rec), {}};
}

ParseResult parse_publications(std::string_view text, const ParseOptions& options) {
  struct Line {
    std::size_t number;
    std::string_view text;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto stop = nl == std::string_view::npos ? text.size() : nl;
    ++number;
    auto view = text.substr(pos, stop - pos);
    if (view.find_first_not_of(" \t\r") != std::string_view::npos) lines.push_back({number, view});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  std::vector<RecordOrError> parsed(lines.size());
  parallel_for(lines.size(), options.workers,
               [&](std::size_t i) { parsed[i] = parse_publication_line(lines[i].text); });

  ParseResult result;
  std::vector<PublicationRecord> accepted;
  std::map<std::string, std::size_t, std::less<>> first_seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& p = parsed[i];
    const auto line_no = lines[i].number;
    if (!p.record) {
      result.diagnostics.push_back({line_no, p.error});
      continue;
    }
    auto& rec = *p.record;
    if (!options.window.contains(rec.year)) {
      result.diagnostics.push_back(
          {line_no, "year " + std::to_string(rec.year) + " outside observation window"});
      continue;
    }
    if (auto [it, fresh] = first_seen.emplace(rec.pub_id, line_no); !fresh) {
      result.diagnostics.push_back({line_no, "duplicate pub_id " + rec.pub_id + " (first seen on line " +
                                                 std::to_string(it->second) + ")"});
      continue;
    }
    if (!has_resolvable_country(rec)) ++result.unattributed;
    accepted.push_back(std::move(rec));
  }
  result.corpus = Corpus(std::move(accepted), options.window);
  return result;
}

ParseResult parse_publications(std::istream& in, const ParseOptions& options) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_publications(std::string_view(text), options);
}

std::string to_json_line(const PublicationRecord& record) {
  nlohmann::ordered_json j;
  j["pub_id"] = record.pub_id;
  j["year"] = record.year;
  j["pub_type"] = record.pub_type;
  j["field_codes"] = record.field_codes;
  auto authors = nlohmann::ordered_json::array();
  for (const auto& a : record.authors) {
    nlohmann::ordered_json entry;
    entry["author_id"] = a.author_id;
    entry["countries"] = a.countries;
    authors.push_back(std::move(entry));
  }
  j["authors"] = std::move(authors);
  j["citations_5y"] = record.citations_5y;
  return j.dump();
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& [id, rec] : corpus) out << to_json_line(rec) << '\n';
}

}  // namespace sciind
