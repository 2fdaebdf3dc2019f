#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sciind/analysis.hpp"
#include "sciind/fractional.hpp"
#include "sciind/impact.hpp"
#include "sciind/mobility.hpp"
#include "sciind/provenance.hpp"

namespace sciind {

/// Four decimals, or "<.0001" below 0.0001.
std::string format_p(double p);

/// Shortest round-trip decimal; "nan"/"inf" for non-finite values.
std::string format_number(double x);

/// `# key: value` comment lines; machine outputs start with this block.
void write_provenance_header(std::ostream& out, const Provenance& prov);

void write_fractional_csv(std::ostream& out, const FractionalCounts& counts);
void write_impact_csv(std::ostream& out, const FracFwciResult& result);
void write_mobility_csv(std::ostream& out, const MobilityShares& shares);
void write_scatter_csv(std::ostream& out, const std::vector<ScatterPoint>& points);
void write_openness_csv(std::ostream& out, const Openness& openness);

nlohmann::ordered_json provenance_json(const Provenance& prov);
nlohmann::ordered_json openness_json(const Openness& openness);
nlohmann::ordered_json report_json(const AnalysisReport& report);

void write_table1(std::ostream& out, const AnalysisReport& report);
void write_table2(std::ostream& out, const Openness& openness);
void write_table3(std::ostream& out, const stats::OlsResult<double>& ols);
/// All three tables plus any recorded errors.
void write_text_report(std::ostream& out, const AnalysisReport& report);

}  // namespace sciind
