#pragma once

#include <map>
#include <string>
#include <vector>

#include "sciind/corpus.hpp"

namespace sciind {

struct TimelineEvent {
  int year = 0;
  std::string pub_id;
  std::vector<CountryCode> countries;  // sorted, non-empty

  bool operator==(const TimelineEvent&) const = default;
};

struct CareerTimeline {
  std::string author_id;
  std::vector<TimelineEvent> events;  // ordered by (year, pub_id)

  bool operator==(const CareerTimeline&) const = default;
};

/// One timeline per author with at least one country-bearing publication.
std::map<std::string, CareerTimeline> build_timelines(const Corpus& corpus);

struct MobilityFlags {
  std::string author_id;
  CountryCode country;
  bool inflow = false;
  bool outflow = false;
  bool returnee = false;
  bool mobile = false;  // author-level: some event's set differs from the first

  bool operator==(const MobilityFlags&) const = default;
};

/// Throws std::invalid_argument("not associated") when `country` never occurs,
/// and when the timeline has fewer than two events.
MobilityFlags classify(const CareerTimeline& timeline, const CountryCode& country);

struct CountryShares {
  double new_inflows = 0.0;
  double returnees = 0.0;
  double mobile = 0.0;
  double outflows = 0.0;
  std::size_t denominator = 0;  // authors with >= 2 events, ever in the country
};

using MobilityShares = std::map<CountryCode, CountryShares>;

MobilityShares mobility_shares(const std::map<std::string, CareerTimeline>& timelines, unsigned workers = 1);
MobilityShares mobility_shares(const Corpus& corpus, unsigned workers = 1);

}  // namespace sciind
