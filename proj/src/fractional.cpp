#include "sciind/fractional.hpp"

#include "sciind/parallel.hpp"

namespace sciind {

CountryWeightVector country_weights(const PublicationRecord& pub) {
  CountryWeightVector out{pub.pub_id, {}};
  std::map<CountryCode, double> mass;
  std::size_t resolved = 0;
  for (const auto& author : pub.authors) {
    if (author.countries.empty()) continue;
    ++resolved;
    const double share = 1.0 / static_cast<double>(author.countries.size());
    for (const auto& c : author.countries) mass[c] += share;
  }
  if (resolved == 0) return out;
  // Single-country authors accumulate integral mass, so a weight is exactly count/resolved.
  for (const auto& [c, m] : mass) out.weights.emplace(c, m / static_cast<double>(resolved));
  return out;
}

std::vector<CountryWeightVector> all_country_weights(const Corpus& corpus, unsigned workers) {
  std::vector<const PublicationRecord*> pubs;
  pubs.reserve(corpus.size());
  for (const auto& [id, rec] : corpus) pubs.push_back(&rec);
  std::vector<CountryWeightVector> out(pubs.size());
  parallel_for(pubs.size(), workers, [&](std::size_t i) { out[i] = country_weights(*pubs[i]); });
  return out;
}

FractionalCounts fractional_pub_counts(const std::vector<CountryWeightVector>& weights) {
  FractionalCounts counts;
  for (const auto& w : weights) {
    if (w.weights.empty()) continue;
    ++counts.attributed;
    const bool intl = w.international();
    for (const auto& [c, x] : w.weights) {
      counts.pubs[c] += x;
      auto& i = counts.international[c];
      if (intl) i += x;
    }
  }
  return counts;
}

FractionalCounts fractional_pub_counts(const Corpus& corpus, unsigned workers) {
  return fractional_pub_counts(all_country_weights(corpus, workers));
}

std::map<CountryCode, double> international_share(const FractionalCounts& counts) {
  std::map<CountryCode, double> out;
  for (const auto& [c, total] : counts.pubs) {
    if (!(total > 0.0)) continue;
    auto it = counts.international.find(c);
    const double intl = it == counts.international.end() ? 0.0 : it->second;
    out.emplace(c, 100.0 * (intl / total));
  }
  return out;
}

}  // namespace sciind
