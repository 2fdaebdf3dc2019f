#include "sciind/analysis.hpp"

#include <cmath>
#include <limits>

namespace sciind {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double value(const std::optional<double>& v) { return v ? *v : kNaN; }

}  // namespace

Openness build_openness(const std::vector<CountryIndicatorRow>& rows) {
  stats::Matrix<double> X(static_cast<Eigen::Index>(rows.size()), 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    X.row(static_cast<Eigen::Index>(i)) << value(r.int_pct), value(r.mobile), value(r.new_inflows),
        value(r.returnees);
  }
  const auto complete = stats::complete_rows(X).size();
  if (complete < 5)
    throw stats::StatsError("openness needs at least 5 complete rows, found " + std::to_string(complete));

  Openness out;
  out.pca = stats::pca_first(X);
  for (const auto& r : rows) out.scores.push_back({r.country_code, std::nullopt, false});
  for (std::size_t i = 0; i < out.pca.rows.size(); ++i) {
    auto& s = out.scores[static_cast<std::size_t>(out.pca.rows[i])];
    s.score = out.pca.scores(static_cast<Eigen::Index>(i));
    s.included = true;
  }
  return out;
}

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::TopRight: return "top-right";
    case Quadrant::TopLeft: return "top-left";
    case Quadrant::BottomLeft: return "bottom-left";
    case Quadrant::BottomRight: return "bottom-right";
  }
  return "?";
}

Quadrant quadrant_of(double x, double y) {
  const bool right = x >= 0.0, top = y >= 1.0;
  if (top) return right ? Quadrant::TopRight : Quadrant::TopLeft;
  return right ? Quadrant::BottomRight : Quadrant::BottomLeft;
}

std::vector<ScatterPoint> scatter_points(const std::vector<CountryIndicatorRow>& rows, const Openness& openness) {
  std::vector<ScatterPoint> out;
  for (std::size_t i = 0; i < rows.size() && i < openness.scores.size(); ++i) {
    const auto& r = rows[i];
    const auto& s = openness.scores[i];
    if (!s.score || !r.frac_fwci || !r.frac_pubs || !(*r.frac_pubs > 0.0)) continue;
    out.push_back({r.country_code, *s.score, *r.frac_fwci, *r.frac_pubs, quadrant_of(*s.score, *r.frac_fwci)});
  }
  return out;
}

stats::Matrix<double> variable_matrix(const std::vector<CountryIndicatorRow>& rows, const Openness* openness) {
  stats::Matrix<double> M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kVariableNames.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double open = openness && openness->scores[i].score ? *openness->scores[i].score : kNaN;
    M.row(static_cast<Eigen::Index>(i)) << value(r.frac_fwci), value(r.gbard), value(r.frac_pubs), value(r.int_pct),
        value(r.new_inflows), value(r.returnees), value(r.mobile), value(r.outflows), open;
  }
  return M;
}

AnalysisReport run_analysis(const std::vector<CountryIndicatorRow>& rows) {
  AnalysisReport report;
  for (const auto& r : rows) report.countries.push_back(r.country_code);

  try {
    report.openness = build_openness(rows);
  } catch (const stats::StatsError& e) {
    report.openness_error = e.what();
  }

  const auto M = variable_matrix(rows, report.openness ? &*report.openness : nullptr);
  report.correlations = stats::correlation_matrix(M);

  if (report.openness) {
    try {
      stats::Matrix<double> X(M.rows(), 3);
      X << M.col(kOpenness), M.col(kGbard), M.col(kFracPubs);
      report.regression = stats::ols(M.col(kFracFwci), X);
    } catch (const stats::StatsError& e) {
      report.regression_error = e.what();
    }
    report.scatter = scatter_points(rows, *report.openness);
  } else {
    report.regression_error = "openness index unavailable: " + report.openness_error;
  }
  return report;
}

}  // namespace sciind
