#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sciind/country_table.hpp"
#include "sciind/provenance.hpp"
#include "sciind/stats/ols.hpp"
#include "sciind/stats/pca.hpp"

namespace sciind {

enum Var { kFracFwci, kGbard, kFracPubs, kIntPct, kNewInflows, kReturnees, kMobile, kOutflows, kOpenness };

inline constexpr std::array<std::string_view, 9> kVariableNames = {
    "FracFWCI", "GBARD", "FracPubs", "Int. Perc.", "NewInflows", "Returnees", "Mobile", "Outflows", "Openness"};

/// PCA inputs in loading-table order.
inline constexpr std::array<std::string_view, 4> kOpennessInputs = {"International Perc.", "mobile", "Newinflows",
                                                                    "Returnees"};

inline constexpr std::array<std::string_view, 3> kRegressors = {"Openness", "GBARD", "FracPubs"};

struct OpennessScore {
  CountryCode country_code;
  std::optional<double> score;  // set iff included
  bool included = false;
};

struct Openness {
  std::vector<OpennessScore> scores;  // table order
  stats::PcaResult<double> pca;
};

/// First principal component of (int_pct, mobile, new_inflows, returnees).
/// Throws stats::StatsError with fewer than 5 complete rows.
Openness build_openness(const std::vector<CountryIndicatorRow>& rows);

enum class Quadrant { TopRight, TopLeft, BottomLeft, BottomRight };

const char* to_string(Quadrant q);

/// x >= 0 is right, y >= 1.0 (world-average impact) is top.
Quadrant quadrant_of(double x, double y);

struct ScatterPoint {
  CountryCode country_code;
  double x = 0;     // openness
  double y = 0;     // frac_fwci
  double size = 0;  // frac_pubs
  Quadrant quadrant = Quadrant::TopRight;
};

/// Rows with an openness score, frac_fwci and a positive frac_pubs.
std::vector<ScatterPoint> scatter_points(const std::vector<CountryIndicatorRow>& rows, const Openness& openness);

/// rows x 9 matrix in kVariableNames order; NaN marks missing. Openness is
/// NaN throughout when `openness` is null.
stats::Matrix<double> variable_matrix(const std::vector<CountryIndicatorRow>& rows, const Openness* openness);

struct AnalysisReport {
  std::vector<CountryCode> countries;  // table order
  stats::CorrelationMatrix<double> correlations{static_cast<Eigen::Index>(kVariableNames.size())};
  std::optional<Openness> openness;
  std::string openness_error;
  std::optional<stats::OlsResult<double>> regression;  // y = FracFWCI, X = kRegressors
  std::string regression_error;
  std::vector<ScatterPoint> scatter;
  Provenance provenance;
};

/// Tables 1-3 and the scatter. Openness and regression failures are recorded
/// in the report rather than thrown, so the correlation block survives.
AnalysisReport run_analysis(const std::vector<CountryIndicatorRow>& rows);

}  // namespace sciind
