#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sciind/corpus.hpp"
#include "sciind/country_table.hpp"

namespace testing {

inline sciind::PublicationRecord pub(std::string id, int year, std::vector<std::string> fields,
                                     std::vector<std::vector<std::string>> author_countries, std::int64_t cites,
                                     std::string type = "article") {
  sciind::PublicationRecord p{std::move(id), year, std::move(type), std::move(fields), {}, cites};
  for (std::size_t i = 0; i < author_countries.size(); ++i)
    p.authors.push_back({p.pub_id + "_a" + std::to_string(i), std::move(author_countries[i])});
  return p;
}

/// Random corpus: up to `max_pubs` papers over a few countries, fields and years.
inline sciind::Corpus random_corpus(std::mt19937_64& rng, int max_pubs, int n_fields = 3, bool multi_field = true) {
  const std::vector<std::string> countries = {"AA", "BB", "CC", "DD"};
  std::uniform_int_distribution<int> n_pubs(1, max_pubs), n_auth(1, 5), country(0, 3), field(1, n_fields),
      year(2010, 2012), cites(0, 12), k(0, 2);
  std::bernoulli_distribution second_field(multi_field ? 0.4 : 0.0), review(0.2);
  std::vector<sciind::PublicationRecord> pubs;
  const int n = n_pubs(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> fields{"F" + std::to_string(field(rng))};
    if (second_field(rng)) {
      auto f = "F" + std::to_string(field(rng));
      if (f != fields[0]) fields.push_back(f);
    }
    std::vector<std::vector<std::string>> authors;
    const int na = n_auth(rng);
    for (int a = 0; a < na; ++a) {
      std::vector<std::string> cs;
      const int nk = k(rng);
      for (int j = 0; j < nk; ++j) {
        auto c = countries[static_cast<std::size_t>(country(rng))];
        if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
      }
      if (a == 0 && cs.empty()) cs.push_back(countries[static_cast<std::size_t>(country(rng))]);
      authors.push_back(cs);
    }
    char id[16];
    std::snprintf(id, sizeof id, "p%04d", i);
    pubs.push_back(pub(id, year(rng), fields, authors, cites(rng), review(rng) ? "review" : "article"));
  }
  return sciind::Corpus(std::move(pubs));
}

inline std::string data_file(const std::string& name) { return std::string(SCIIND_DATA_DIR) + "/" + name; }

inline sciind::CountryTable reference_table() {
  std::ifstream f(data_file("countries_2013.csv"));
  return sciind::parse_country_table(f);
}

}  // namespace testing
