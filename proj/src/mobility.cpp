#include "sciind/mobility.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sciind/parallel.hpp"

namespace sciind {

std::map<std::string, CareerTimeline> build_timelines(const Corpus& corpus) {
  std::map<std::string, CareerTimeline> out;
  for (const auto& [id, pub] : corpus) {
    for (const auto& a : pub.authors) {
      if (a.countries.empty()) continue;
      auto& tl = out[a.author_id];
      tl.author_id = a.author_id;
      // An author listed twice on one paper yields one event with the union.
      if (!tl.events.empty() && tl.events.back().pub_id == id) {
        auto& set = tl.events.back().countries;
        set.insert(set.end(), a.countries.begin(), a.countries.end());
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        continue;
      }
      TimelineEvent e{pub.year, id, a.countries};
      std::sort(e.countries.begin(), e.countries.end());
      tl.events.push_back(std::move(e));
    }
  }
  // Corpus iteration is pub_id order, so a stable sort on year gives (year, pub_id).
  for (auto& [id, tl] : out)
    std::stable_sort(tl.events.begin(), tl.events.end(),
                     [](const TimelineEvent& a, const TimelineEvent& b) { return a.year < b.year; });
  return out;
}

MobilityFlags classify(const CareerTimeline& timeline, const CountryCode& country) {
  const auto& ev = timeline.events;
  auto has = [&](const TimelineEvent& e) { return std::binary_search(e.countries.begin(), e.countries.end(), country); };
  if (std::none_of(ev.begin(), ev.end(), has)) throw std::invalid_argument("not associated");
  if (ev.size() < 2) throw std::invalid_argument("timeline needs at least two events");

  MobilityFlags f{timeline.author_id, country};
  const bool first = has(ev.front());
  f.inflow = !first;
  bool gap = false;
  for (std::size_t i = 1; i < ev.size(); ++i) {
    if (ev[i].countries != ev.front().countries) f.mobile = true;
    if (!first) continue;
    if (!has(ev[i])) {
      gap = true;
      f.outflow = true;
    } else if (gap) {
      f.returnee = true;
    }
  }
  return f;
}

MobilityShares mobility_shares(const std::map<std::string, CareerTimeline>& timelines, unsigned workers) {
  std::vector<const CareerTimeline*> qualifying;
  for (const auto& [id, tl] : timelines)
    if (tl.events.size() >= 2) qualifying.push_back(&tl);

  std::vector<std::vector<MobilityFlags>> flags(qualifying.size());
  parallel_for(qualifying.size(), workers, [&](std::size_t i) {
    std::set<CountryCode> seen;
    for (const auto& e : qualifying[i]->events) seen.insert(e.countries.begin(), e.countries.end());
    for (const auto& c : seen) flags[i].push_back(classify(*qualifying[i], c));
  });

  struct Counts {
    std::size_t n = 0, inflow = 0, outflow = 0, returnee = 0, mobile = 0;
  };
  std::map<CountryCode, Counts> counts;
  for (const auto& per_author : flags) {
    for (const auto& f : per_author) {
      auto& c = counts[f.country];
      ++c.n;
      c.inflow += f.inflow;
      c.outflow += f.outflow;
      c.returnee += f.returnee;
      c.mobile += f.mobile;
    }
  }

  MobilityShares out;
  for (const auto& [code, c] : counts) {
    const auto n = static_cast<double>(c.n);
    out.emplace(code, CountryShares{static_cast<double>(c.inflow) / n, static_cast<double>(c.returnee) / n,
                                    static_cast<double>(c.mobile) / n, static_cast<double>(c.outflow) / n, c.n});
  }
  return out;
}

MobilityShares mobility_shares(const Corpus& corpus, unsigned workers) {
  return mobility_shares(build_timelines(corpus), workers);
}

}  // namespace sciind
