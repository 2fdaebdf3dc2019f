#pragma once

#include <map>
#include <string>
#include <vector>

#include "sciind/corpus.hpp"

namespace sciind {

/// Per-publication country shares. Weights are > 0 and sum to 1; the map is
/// empty iff no author carries a country.
struct CountryWeightVector {
  std::string pub_id;
  std::map<CountryCode, double> weights;

  bool international() const { return weights.size() >= 2; }
  bool operator==(const CountryWeightVector&) const = default;
};

struct FractionalCounts {
  std::map<CountryCode, double> pubs;           // fractional publication count
  std::map<CountryCode, double> international;  // fractional count of multi-country papers
  std::size_t attributed = 0;                   // publications with >= 1 country

  bool operator==(const FractionalCounts&) const = default;
};

/// Each author carries 1/n of the paper, split equally over that author's
/// countries. Authors without a country are dropped and the rest renormalized.
CountryWeightVector country_weights(const PublicationRecord& pub);

/// Weight vectors for every publication, in pub_id order.
std::vector<CountryWeightVector> all_country_weights(const Corpus& corpus, unsigned workers = 1);

FractionalCounts fractional_pub_counts(const Corpus& corpus, unsigned workers = 1);
FractionalCounts fractional_pub_counts(const std::vector<CountryWeightVector>& weights);

/// 100 * international / total per country; countries with zero count omitted.
std::map<CountryCode, double> international_share(const FractionalCounts& counts);

}  // namespace sciind
