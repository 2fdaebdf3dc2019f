#include "sciind/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

namespace sciind {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }

  // Uniform integer in [0, n) by rejection, n > 0.
  std::size_t below(std::size_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  // Knuth's product method; means here are small.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

 private:
  std::mt19937_64 eng_;
};

std::string padded(char prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, n);
  return buf;
}

struct Author {
  std::string id;
  std::vector<std::size_t> country_by_year;  // index into params.countries
  std::optional<std::size_t> secondary;
};

bool in(const std::vector<CountryCode>& set, const CountryCode& c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

AuthorTruth classify_events(const std::vector<std::vector<CountryCode>>& events) {
  AuthorTruth t;
  t.events = events.size();
  for (const auto& e : events) t.associated.insert(e.begin(), e.end());
  if (events.empty()) return t;
  auto same_set = [](std::vector<CountryCode> a, std::vector<CountryCode> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };
  for (std::size_t i = 1; i < events.size(); ++i)
    if (!same_set(events[i], events[0])) t.mobile = true;
  for (const auto& c : t.associated) {
    const bool first = in(events[0], c);
    if (!first) {
      t.inflow.insert(c);
      continue;
    }
    for (std::size_t j = 1; j < events.size(); ++j) {
      if (in(events[j], c)) continue;
      t.outflow.insert(c);
      for (std::size_t k = j + 1; k < events.size(); ++k)
        if (in(events[k], c)) t.returnee.insert(c);
    }
  }
  return t;
}

}  // namespace

SynthParams default_synth_params(std::uint64_t seed) {
  SynthParams p;
  p.seed = seed;
  p.countries = {{"CH", 12, 0.7}, {"US", 30, 0.3}, {"GB", 20, 0.5},
                 {"CN", 25, 0.15}, {"DE", 18, 0.45}, {"SG", 8, 0.65}};
  p.multi_field_prob = 0.3;
  p.multi_affiliation_prob = 0.05;
  p.unresolved_prob = 0.02;
  return p;
}

void validate(const SynthParams& p) {
  auto prob = [](double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(name) + " must be in [0,1]");
  };
  if (p.countries.empty()) throw std::invalid_argument("at least one country required");
  std::set<CountryCode> seen;
  for (const auto& c : p.countries) {
    if (!is_country_code(c.code)) throw std::invalid_argument("invalid country code '" + c.code + "'");
    if (!seen.insert(c.code).second) throw std::invalid_argument("duplicate country " + c.code);
    if (c.n_authors < 1) throw std::invalid_argument("n_authors must be positive for " + c.code);
    prob(c.latent_openness, "latent_openness");
  }
  if (p.first_year > p.last_year) throw std::invalid_argument("first_year after last_year");
  if (!(p.papers_per_author_year > 0.0 && p.papers_per_author_year <= 50.0))
    throw std::invalid_argument("papers_per_author_year must be in (0,50]");
  prob(p.mobility_prob, "mobility_prob");
  prob(p.multi_field_prob, "multi_field_prob");
  prob(p.multi_affiliation_prob, "multi_affiliation_prob");
  prob(p.unresolved_prob, "unresolved_prob");
  prob(p.review_prob, "review_prob");
  if (p.n_fields < 1) throw std::invalid_argument("n_fields must be positive");
  if (!p.citation_means.empty() && p.citation_means.size() != static_cast<std::size_t>(p.n_fields))
    throw std::invalid_argument("citation_means needs one entry per field");
  for (double m : p.citation_means)
    if (!(m >= 0.0 && m <= 200.0)) throw std::invalid_argument("citation mean must be in [0,200]");
  if (p.max_coauthors < 0) throw std::invalid_argument("max_coauthors must be non-negative");
}

SynthOutput generate_synthetic_corpus(const SynthParams& params) {
  validate(params);
  Draw rng(params.seed);
  const auto& countries = params.countries;
  const std::size_t n_years = static_cast<std::size_t>(params.last_year - params.first_year + 1);

  std::vector<double> means = params.citation_means;
  if (means.empty())
    for (int f = 0; f < params.n_fields; ++f) means.push_back(2.0 * (f + 1));

  // Careers.
  std::vector<Author> authors;
  for (std::size_t ci = 0; ci < countries.size(); ++ci) {
    for (int k = 0; k < countries[ci].n_authors; ++k) {
      Author a;
      a.id = padded('a', authors.size(), 6);
      std::size_t here = ci;
      for (std::size_t y = 0; y < n_years; ++y) {
        if (y > 0 && countries.size() > 1 && rng.chance(params.mobility_prob)) {
          const auto step = 1 + rng.below(countries.size() - 1);
          here = (here + step) % countries.size();
        }
        a.country_by_year.push_back(here);
      }
      if (countries.size() > 1 && rng.chance(params.multi_affiliation_prob))
        a.secondary = (ci + 1 + rng.below(countries.size() - 1)) % countries.size();
      authors.push_back(std::move(a));
    }
  }

  std::vector<PublicationRecord> pubs;
  GroundTruth truth;
  std::vector<std::vector<std::vector<CountryCode>>> events(authors.size());

  for (std::size_t y = 0; y < n_years; ++y) {
    std::vector<std::vector<std::size_t>> resident(countries.size());
    for (std::size_t a = 0; a < authors.size(); ++a) resident[authors[a].country_by_year[y]].push_back(a);

    for (std::size_t lead = 0; lead < authors.size(); ++lead) {
      const int papers = rng.poisson(params.papers_per_author_year);
      for (int p = 0; p < papers; ++p) {
        PublicationRecord rec;
        rec.pub_id = padded('p', pubs.size(), 8);
        rec.year = params.first_year + static_cast<int>(y);
        rec.pub_type = rng.chance(params.review_prob) ? "review" : "article";

        const auto primary = rng.below(static_cast<std::size_t>(params.n_fields));
        rec.field_codes.push_back("F" + std::to_string(primary + 1));
        if (params.n_fields > 1 && rng.chance(params.multi_field_prob)) {
          const auto second = (primary + 1 + rng.below(static_cast<std::size_t>(params.n_fields - 1))) %
                              static_cast<std::size_t>(params.n_fields);
          rec.field_codes.push_back("F" + std::to_string(second + 1));
        }

        std::vector<std::size_t> team{lead};
        const auto home = authors[lead].country_by_year[y];
        const auto extra = rng.below(static_cast<std::size_t>(params.max_coauthors) + 1);
        for (std::size_t k = 0; k < extra; ++k) {
          std::size_t pick;
          if (countries.size() > 1 && rng.chance(countries[home].latent_openness)) {
            const auto abroad = (home + 1 + rng.below(countries.size() - 1)) % countries.size();
            if (resident[abroad].empty()) continue;
            pick = resident[abroad][rng.below(resident[abroad].size())];
          } else {
            pick = resident[home][rng.below(resident[home].size())];
          }
          if (std::find(team.begin(), team.end(), pick) == team.end()) team.push_back(pick);
        }

        // Generator-side weights in half units: an author with k <= 2 countries adds 2/k.
        std::map<CountryCode, long> units;
        long resolved = 0;
        for (auto a : team) {
          AuthorEntry entry{authors[a].id, {}};
          if (!rng.chance(params.unresolved_prob)) {
            entry.countries.push_back(countries[authors[a].country_by_year[y]].code);
            if (authors[a].secondary) {
              const auto& second = countries[*authors[a].secondary].code;
              if (second != entry.countries.front()) entry.countries.push_back(second);
            }
          }
          if (!entry.countries.empty()) {
            ++resolved;
            for (const auto& c : entry.countries) units[c] += 2 / static_cast<long>(entry.countries.size());
            events[a].push_back(entry.countries);
          }
          rec.authors.push_back(std::move(entry));
        }

        const auto mean = means[primary] * (rec.pub_type == "review" ? 1.5 : 1.0);
        rec.citations_5y = rng.poisson(mean);

        ++truth.generated;
        if (resolved > 0) {
          ++truth.attributed;
          for (const auto& [c, u] : units) {
            const double w = static_cast<double>(u) / static_cast<double>(2 * resolved);
            truth.frac_pubs[c] += w;
            auto& intl = truth.frac_international[c];
            if (units.size() >= 2) intl += w;
          }
        }
        pubs.push_back(std::move(rec));
      }
    }
  }

  for (std::size_t a = 0; a < authors.size(); ++a) {
    if (events[a].empty()) continue;
    auto t = classify_events(events[a]);
    if (t.events >= 2) {
      for (const auto& c : t.associated) {
        auto& m = truth.mobility[c];
        ++m.denominator;
        m.inflow += t.inflow.contains(c);
        m.outflow += t.outflow.contains(c);
        m.returnee += t.returnee.contains(c);
        m.mobile += t.mobile;
      }
    }
    truth.authors.emplace(authors[a].id, std::move(t));
  }

  return {Corpus(std::move(pubs), YearWindow{params.first_year, params.last_year}), std::move(truth)};
}

}  // namespace sciind
