#include "sciind/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sciind {

using nlohmann::ordered_json;

std::string format_p(double p) {
  if (p < 0.0001) return "<.0001";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p);
  return buf;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_provenance_header(std::ostream& out, const Provenance& prov) {
  out << "# sciind " << kVersion << '\n';
  for (const auto& [name, digest] : prov.inputs) out << "# input: " << name << " fnv1a64=" << digest << '\n';
  for (const auto& [key, value] : prov.flags) out << "# " << key << ": " << value << '\n';
}

void write_fractional_csv(std::ostream& out, const FractionalCounts& counts) {
  out << "country_code,frac_pubs,int_pct\n";
  const auto shares = international_share(counts);
  for (const auto& [c, n] : counts.pubs) {
    auto it = shares.find(c);
    if (it == shares.end()) continue;
    out << c << ',' << format_number(n) << ',' << format_number(it->second) << '\n';
  }
}

void write_impact_csv(std::ostream& out, const FracFwciResult& result) {
  out << "country_code,mode,frac_fwci,weight_mass,n_pubs\n";
  for (const auto& [c, r] : result.countries)
    out << c << ',' << to_string(result.mode) << ',' << format_number(r.frac_fwci) << ','
        << format_number(r.weight_mass) << ',' << r.n_pubs << '\n';
}

void write_mobility_csv(std::ostream& out, const MobilityShares& shares) {
  out << "country_code,new_inflows,returnees,mobile,outflows,denominator\n";
  for (const auto& [c, s] : shares)
    out << c << ',' << format_number(s.new_inflows) << ',' << format_number(s.returnees) << ','
        << format_number(s.mobile) << ',' << format_number(s.outflows) << ',' << s.denominator << '\n';
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterPoint>& points) {
  out << "country_code,x,y,size,quadrant\n";
  for (const auto& p : points)
    out << p.country_code << ',' << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.size)
        << ',' << to_string(p.quadrant) << '\n';
}

void write_openness_csv(std::ostream& out, const Openness& openness) {
  out << "country_code,openness,included\n";
  for (const auto& s : openness.scores)
    out << s.country_code << ',' << (s.score ? format_number(*s.score) : "") << ',' << (s.included ? 1 : 0) << '\n';
}

namespace {

ordered_json num(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json coefficient_json(std::string_view name, const stats::Coefficient<double>& c, bool with_vif) {
  ordered_json j;
  j["variable"] = name;
  j["standardized"] = num(c.standardized);
  j["estimate"] = num(c.estimate);
  j["std_error"] = num(c.se);
  j["t"] = num(c.t);
  j["p"] = num(c.p);
  if (with_vif) j["vif"] = std::isinf(c.vif) ? ordered_json("inf") : num(c.vif);
  return j;
}

std::string fixed(double x, int digits) {
  if (!std::isfinite(x)) return format_number(x);
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", x);
  return buf;
}

// Parameter estimates span many magnitudes; switch to E notation for tiny ones.
std::string estimate_text(double x) { return x != 0.0 && std::abs(x) < 1e-3 ? sci(x) : fixed(x, 5); }

}  // namespace

ordered_json provenance_json(const Provenance& prov) {
  ordered_json j;
  j["version"] = kVersion;
  auto inputs = ordered_json::array();
  for (const auto& [name, digest] : prov.inputs) inputs.push_back({{"name", name}, {"fnv1a64", digest}});
  j["inputs"] = std::move(inputs);
  ordered_json flags = ordered_json::object();
  for (const auto& [k, v] : prov.flags) flags[k] = v;
  j["flags"] = std::move(flags);
  return j;
}

ordered_json openness_json(const Openness& o) {
  ordered_json j;
  j["eigenvalue"] = o.pca.eigenvalue;
  j["variance_share"] = o.pca.variance_share;
  auto eig = ordered_json::array();
  for (Eigen::Index i = 0; i < o.pca.eigenvalues.size(); ++i) eig.push_back(o.pca.eigenvalues(i));
  j["eigenvalues"] = std::move(eig);
  ordered_json loadings;
  for (std::size_t i = 0; i < kOpennessInputs.size(); ++i)
    loadings[std::string(kOpennessInputs[i])] = o.pca.loadings(static_cast<Eigen::Index>(i));
  j["loadings"] = std::move(loadings);
  j["rows_used"] = o.pca.rows.size();
  auto scores = ordered_json::array();
  for (const auto& s : o.scores)
    scores.push_back({{"country_code", s.country_code}, {"score", s.score ? ordered_json(*s.score) : ordered_json(nullptr)}});
  j["scores"] = std::move(scores);
  return j;
}

ordered_json report_json(const AnalysisReport& report) {
  ordered_json j;
  j["provenance"] = provenance_json(report.provenance);
  j["countries"] = report.countries;
  auto vars = ordered_json::array();
  for (auto v : kVariableNames) vars.push_back(v);
  j["variables"] = std::move(vars);

  auto cells = ordered_json::array();
  const auto k = report.correlations.size();
  for (Eigen::Index i = 1; i < k; ++i) {
    for (Eigen::Index jj = 0; jj < i; ++jj) {
      ordered_json c;
      c["row"] = kVariableNames[static_cast<std::size_t>(i)];
      c["col"] = kVariableNames[static_cast<std::size_t>(jj)];
      if (const auto& cell = report.correlations(i, jj)) {
        c["r"] = cell->r;
        c["p"] = cell->p;
        c["n"] = cell->n;
      } else {
        c["r"] = nullptr;
        c["p"] = nullptr;
        c["n"] = nullptr;
      }
      cells.push_back(std::move(c));
    }
  }
  j["correlations"] = std::move(cells);

  if (report.openness)
    j["openness"] = openness_json(*report.openness);
  else
    j["openness"] = {{"error", report.openness_error}};

  if (report.regression) {
    const auto& r = *report.regression;
    ordered_json reg;
    reg["dependent"] = kVariableNames[kFracFwci];
    reg["intercept"] = coefficient_json("Intercept", r.intercept, false);
    auto coefs = ordered_json::array();
    for (std::size_t i = 0; i < r.coefficients.size(); ++i)
      coefs.push_back(coefficient_json(kRegressors[i], r.coefficients[i], true));
    reg["coefficients"] = std::move(coefs);
    reg["r2"] = r.r2;
    reg["adj_r2"] = r.adj_r2;
    reg["n"] = r.n;
    j["regression"] = std::move(reg);
  } else {
    j["regression"] = {{"error", report.regression_error}};
  }

  auto scatter = ordered_json::array();
  for (const auto& p : report.scatter)
    scatter.push_back({{"country_code", p.country_code},
                       {"x", p.x},
                       {"y", p.y},
                       {"size", p.size},
                       {"quadrant", to_string(p.quadrant)}});
  j["scatter"] = std::move(scatter);
  return j;
}

void write_table1(std::ostream& out, const AnalysisReport& report) {
  constexpr int label_w = 16, cell_w = 10;
  const auto k = report.correlations.size();
  out << "Table 1 - Correlations\n\n" << std::setw(label_w) << "";
  for (Eigen::Index j = 0; j + 1 < k; ++j) out << std::setw(cell_w) << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < k; ++i) {
    const std::string label = std::to_string(i + 1) + " - " + std::string(kVariableNames[static_cast<std::size_t>(i)]);
    std::string lines[3];
    for (Eigen::Index j = 0; j < i; ++j) {
      const auto& c = report.correlations(i, j);
      std::ostringstream r, p, n;
      r << std::setw(cell_w) << (c ? fixed(c->r, 5) : "n/a");
      p << std::setw(cell_w) << (c ? format_p(c->p) : "");
      n << std::setw(cell_w) << (c ? std::to_string(c->n) : "");
      lines[0] += r.str();
      lines[1] += p.str();
      lines[2] += n.str();
    }
    out << std::left << std::setw(label_w) << label << std::right << lines[0] << '\n';
    if (i > 0) {
      out << std::setw(label_w) << "" << lines[1] << '\n';
      out << std::setw(label_w) << "" << lines[2] << '\n';
    }
  }
  out << "\nTop row = coefficient, middle row = p-value, bottom row = sample size\n";
}

void write_table2(std::ostream& out, const Openness& o) {
  out << "Table 2 - Component Loadings on Openness\n\n";
  out << std::left << std::setw(22) << "Eigenvectors" << std::right << std::setw(10) << "Openness" << '\n';
  for (std::size_t i = 0; i < kOpennessInputs.size(); ++i)
    out << std::left << std::setw(22) << kOpennessInputs[i] << std::right << std::setw(10)
        << fixed(o.pca.loadings(static_cast<Eigen::Index>(i)), 6) << '\n';
  out << "\nEigenvalue " << fixed(o.pca.eigenvalue, 4) << ", proportion of variance "
      << fixed(o.pca.variance_share, 4) << ", N = " << o.pca.rows.size() << '\n';
}

void write_table3(std::ostream& out, const stats::OlsResult<double>& r) {
  constexpr int w = 16;
  out << "Table 3 - Linear Regression, Dependent Variable is " << kVariableNames[kFracFwci] << "\n\n";
  out << std::left << std::setw(12) << "Variable" << std::right << std::setw(w) << "Stand. Est." << std::setw(w)
      << "Parameter Est." << std::setw(w) << "Std. Error" << std::setw(w) << "t Value" << std::setw(w) << "Pr > |t|"
      << std::setw(w) << "VIF" << '\n';
  auto row = [&](std::string_view name, const stats::Coefficient<double>& c, bool intercept) {
    out << std::left << std::setw(12) << name << std::right << std::setw(w)
        << (intercept ? std::string("0") : fixed(c.standardized, 5)) << std::setw(w) << estimate_text(c.estimate)
        << std::setw(w) << estimate_text(c.se) << std::setw(w) << fixed(c.t, 2) << std::setw(w) << format_p(c.p)
        << std::setw(w) << (intercept ? std::string("") : fixed(c.vif, 3)) << '\n';
  };
  row("Intercept", r.intercept, true);
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) row(kRegressors[i], r.coefficients[i], false);
  out << std::left << std::setw(12) << "Adj. R-2" << std::right << std::setw(w) << fixed(r.adj_r2, 4) << '\n';
  out << std::left << std::setw(12) << "N" << std::right << std::setw(w) << r.n << '\n';
}

void write_text_report(std::ostream& out, const AnalysisReport& report) {
  write_table1(out, report);
  out << '\n';
  if (report.openness)
    write_table2(out, *report.openness);
  else
    out << "Table 2 unavailable: " << report.openness_error << '\n';
  out << '\n';
  if (report.regression)
    write_table3(out, *report.regression);
  else
    out << "Table 3 unavailable: " << report.regression_error << '\n';
}

}  // namespace sciind
