#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sciind/corpus.hpp"
#include "sciind/fractional.hpp"

namespace sciind {

enum class FwciMode { FieldLevel, AllSubjects };

const char* to_string(FwciMode mode);

struct GroupKey {
  std::string field;  // AllSubjects: sorted field codes joined with '|'
  int year = 0;
  std::string pub_type;

  auto operator<=>(const GroupKey&) const = default;
};

struct GroupStats {
  std::int64_t total = 0;  // summed citations_5y
  std::size_t size = 0;

  double mean() const { return static_cast<double>(total) / static_cast<double>(size); }
  bool degenerate() const { return total == 0; }
};

struct BaselineTable {
  FwciMode mode = FwciMode::AllSubjects;
  std::map<GroupKey, GroupStats> groups;
};

/// The baseline groups a publication belongs to: one per field code under
/// FieldLevel, exactly one under AllSubjects.
std::vector<GroupKey> group_keys(const PublicationRecord& pub, FwciMode mode);

BaselineTable build_baselines(const Corpus& corpus, FwciMode mode, unsigned workers = 1);

/// c_i / e_i per group of `pub` (order of group_keys); nullopt marks a
/// degenerate group. Throws std::invalid_argument if a group is unknown.
std::vector<std::optional<double>> fwci_of(const PublicationRecord& pub, const BaselineTable& baselines);

struct CountryImpact {
  double frac_fwci = 0.0;
  double weight_mass = 0.0;  // sum of f_i over non-excluded contributions
  std::size_t n_pubs = 0;    // publications contributing at least one ratio
};

struct FracFwciResult {
  FwciMode mode = FwciMode::AllSubjects;
  std::map<CountryCode, CountryImpact> countries;
};

/// sum(c_i/e_i * f_i) / sum(f_i) per country. `weights` may name any entity
/// (a pooled world entity works); each pub_id must exist in `corpus`.
/// FieldLevel sums every (publication, field) contribution, which equals the
/// per-field values combined by weight mass.
FracFwciResult frac_fwci(const Corpus& corpus, const BaselineTable& baselines,
                         const std::vector<CountryWeightVector>& weights, unsigned workers = 1);

struct ModeComparison {
  std::optional<double> fwci_field, fwci_all;
  double pubs_field = 0.0;  // sum of f_i * (number of fields)
  double pubs_all = 0.0;    // sum of f_i
};

std::map<CountryCode, ModeComparison> compare_modes(const Corpus& corpus, unsigned workers = 1);

}  // namespace sciind
