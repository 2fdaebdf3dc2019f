#include "sciind/impact.hpp"

#include <algorithm>
#include <stdexcept>

#include "sciind/parallel.hpp"

namespace sciind {

const char* to_string(FwciMode mode) { return mode == FwciMode::FieldLevel ? "field" : "all-subjects"; }

std::vector<GroupKey> group_keys(const PublicationRecord& pub, FwciMode mode) {
  std::vector<GroupKey> keys;
  if (mode == FwciMode::FieldLevel) {
    for (const auto& f : pub.field_codes) keys.push_back({f, pub.year, pub.pub_type});
    return keys;
  }
  auto fields = pub.field_codes;
  std::sort(fields.begin(), fields.end());
  std::string joined;
  for (const auto& f : fields) {
    if (!joined.empty()) joined += '|';
    joined += f;
  }
  keys.push_back({std::move(joined), pub.year, pub.pub_type});
  return keys;
}

BaselineTable build_baselines(const Corpus& corpus, FwciMode mode, unsigned workers) {
  std::vector<const PublicationRecord*> pubs;
  pubs.reserve(corpus.size());
  for (const auto& [id, rec] : corpus) pubs.push_back(&rec);
  std::vector<std::vector<GroupKey>> keys(pubs.size());
  parallel_for(pubs.size(), workers, [&](std::size_t i) { keys[i] = group_keys(*pubs[i], mode); });

  BaselineTable table{mode, {}};
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    for (auto& k : keys[i]) {
      auto& g = table.groups[std::move(k)];
      g.total += pubs[i]->citations_5y;
      ++g.size;
    }
  }
  return table;
}

std::vector<std::optional<double>> fwci_of(const PublicationRecord& pub, const BaselineTable& baselines) {
  std::vector<std::optional<double>> out;
  for (const auto& key : group_keys(pub, baselines.mode)) {
    auto it = baselines.groups.find(key);
    if (it == baselines.groups.end())
      throw std::invalid_argument("publication " + pub.pub_id + " has no baseline group");
    if (it->second.degenerate())
      out.emplace_back();
    else
      out.emplace_back(static_cast<double>(pub.citations_5y) / it->second.mean());
  }
  return out;
}

FracFwciResult frac_fwci(const Corpus& corpus, const BaselineTable& baselines,
                         const std::vector<CountryWeightVector>& weights, unsigned workers) {
  std::vector<std::vector<std::optional<double>>> ratios(weights.size());
  parallel_for(weights.size(), workers, [&](std::size_t i) {
    const auto* pub = corpus.find(weights[i].pub_id);
    if (!pub) throw std::invalid_argument("weight vector for unknown publication " + weights[i].pub_id);
    ratios[i] = fwci_of(*pub, baselines);
  });

  struct Acc {
    double num = 0.0, den = 0.0;
    std::size_t pubs = 0;
  };
  std::map<CountryCode, Acc> acc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (const auto& [c, f] : weights[i].weights) {
      bool used = false;
      for (const auto& r : ratios[i]) {
        if (!r) continue;
        auto& a = acc[c];
        a.num += *r * f;
        a.den += f;
        used = true;
      }
      if (used) ++acc[c].pubs;
    }
  }

  FracFwciResult result{baselines.mode, {}};
  for (const auto& [c, a] : acc)
    if (a.den > 0.0) result.countries.emplace(c, CountryImpact{a.num / a.den, a.den, a.pubs});
  return result;
}

std::map<CountryCode, ModeComparison> compare_modes(const Corpus& corpus, unsigned workers) {
  const auto weights = all_country_weights(corpus, workers);
  const auto field = frac_fwci(corpus, build_baselines(corpus, FwciMode::FieldLevel, workers), weights, workers);
  const auto all = frac_fwci(corpus, build_baselines(corpus, FwciMode::AllSubjects, workers), weights, workers);

  std::map<CountryCode, ModeComparison> out;
  auto it = corpus.begin();
  for (const auto& w : weights) {
    const auto m = static_cast<double>(it->second.field_codes.size());
    for (const auto& [c, f] : w.weights) {
      auto& row = out[c];
      row.pubs_field += f * m;
      row.pubs_all += f;
    }
    ++it;
  }
  for (auto& [c, row] : out) {
    if (auto f = field.countries.find(c); f != field.countries.end()) row.fwci_field = f->second.frac_fwci;
    if (auto a = all.countries.find(c); a != all.countries.end()) row.fwci_all = a->second.frac_fwci;
  }
  return out;
}

}  // namespace sciind
