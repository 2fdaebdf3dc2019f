#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sciind/corpus.hpp"

namespace sciind {

struct SynthCountry {
  CountryCode code;
  int n_authors = 0;
  double latent_openness = 0.0;  // probability a coauthor is drawn from abroad
};

struct SynthParams {
  std::uint64_t seed = 0;
  std::vector<SynthCountry> countries;
  int first_year = 2009;
  int last_year = 2013;
  double papers_per_author_year = 0.8;  // Poisson mean of lead-authored papers
  double mobility_prob = 0.1;           // yearly chance to move to another country
  int n_fields = 4;
  std::vector<double> citation_means;   // one per field; empty = 2, 4, 6, ...
  double multi_field_prob = 0.0;        // chance a paper gets a second field
  int max_coauthors = 3;
  double multi_affiliation_prob = 0.0;  // chance an author holds a fixed second affiliation
  double unresolved_prob = 0.0;         // chance an author entry carries no country
  double review_prob = 0.1;
};

/// Small default world used by the CLI and tests.
SynthParams default_synth_params(std::uint64_t seed);

/// Mobility bookkeeping for one author, taken from the generator's own event list.
struct AuthorTruth {
  std::size_t events = 0;
  bool mobile = false;
  std::set<CountryCode> associated, inflow, outflow, returnee;

  bool operator==(const AuthorTruth&) const = default;
};

struct CountryMobilityCounts {
  std::size_t denominator = 0;
  std::size_t inflow = 0, outflow = 0, returnee = 0, mobile = 0;

  bool operator==(const CountryMobilityCounts&) const = default;
};

struct GroundTruth {
  std::map<CountryCode, double> frac_pubs;
  std::map<CountryCode, double> frac_international;
  std::size_t attributed = 0;  // papers with >= 1 resolvable country
  std::size_t generated = 0;
  std::map<std::string, AuthorTruth> authors;
  std::map<CountryCode, CountryMobilityCounts> mobility;  // authors with >= 2 events only

  bool operator==(const GroundTruth&) const = default;
};

struct SynthOutput {
  Corpus corpus;
  GroundTruth truth;
};

/// Throws std::invalid_argument for out-of-range parameters.
void validate(const SynthParams& params);

/// Simulates careers and papers. The seed fully determines the output; the
/// random draws are built on std::mt19937_64 only, so results do not depend on
/// the standard library's distribution implementations.
SynthOutput generate_synthetic_corpus(const SynthParams& params);

}  // namespace sciind
