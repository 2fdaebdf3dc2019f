// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cli.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "sciind/analysis.hpp"
#include "sciind/fractional.hpp"
#include "sciind/impact.hpp"
#include "sciind/mobility.hpp"
#include "sciind/report.hpp"
#include "sciind/synth.hpp"

using namespace sciind;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      else if (detail.size() < 400) detail += "; " + what;
      pass = false;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

AnalysisReport reference_report(double* seconds = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = testing::reference_table();
  auto report = run_analysis(table.rows);
  if (seconds) *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// Lower triangle of the target correlation table: r, displayed p, n.
struct Cell {
  int row, col;
  double r;
  const char* p;
  int n;
};

const std::vector<Cell> kTable = {
    {kGbard, kFracFwci, 0.1137, "0.5091", 36},
    {kFracPubs, kFracFwci, 0.02679, "0.8767", 36},
    {kFracPubs, kGbard, 0.84845, "<.0001", 36},
    {kIntPct, kFracFwci, 0.76846, "<.0001", 36},
    {kIntPct, kGbard, -0.27492, "0.1046", 36},
    {kIntPct, kFracPubs, -0.36761, "0.0274", 36},
    {kNewInflows, kFracFwci, 0.72562, "<.0001", 35},
    {kNewInflows, kGbard, -0.10613, "0.544", 35},
    {kNewInflows, kFracPubs, -0.15425, "0.3763", 35},
    {kNewInflows, kIntPct, 0.78941, "<.0001", 35},
    {kReturnees, kFracFwci, 0.46826, "0.0046", 35},
    {kReturnees, kGbard, -0.21704, "0.2104", 35},
    {kReturnees, kFracPubs, -0.26163, "0.129", 35},
    {kReturnees, kIntPct, 0.68445, "<.0001", 35},
    {kReturnees, kNewInflows, 0.57691, "0.0003", 35},
    {kMobile, kFracFwci, 0.73998, "<.0001", 36},
    {kMobile, kGbard, -0.12949, "0.4516", 36},
    {kMobile, kFracPubs, -0.19158, "0.263", 36},
    {kMobile, kIntPct, 0.77385, "<.0001", 36},
    {kMobile, kNewInflows, 0.97498, "<.0001", 35},
    {kMobile, kReturnees, 0.65189, "<.0001", 35},
    {kOutflows, kFracFwci, 0.69447, "<.0001", 35},
    {kOutflows, kGbard, -0.11399, "0.5144", 35},
    {kOutflows, kFracPubs, -0.17396, "0.3176", 35},
    {kOutflows, kIntPct, 0.80007, "<.0001", 35},
    {kOutflows, kNewInflows, 0.94554, "<.0001", 35},
    {kOutflows, kReturnees, 0.71213, "<.0001", 35},
    {kOutflows, kMobile, 0.97018, "<.0001", 35},
    {kOpenness, kFracFwci, 0.68197, "<.0001", 35},
    {kOpenness, kGbard, -0.26361, "0.126", 35},
    {kOpenness, kFracPubs, -0.33819, "0.0469", 35},
    {kOpenness, kIntPct, 0.85347, "<.0001", 35},
    {kOpenness, kNewInflows, 0.9335, "<.0001", 35},
    {kOpenness, kReturnees, 0.80505, "<.0001", 35},
    {kOpenness, kMobile, 0.96064, "<.0001", 35},
    {kOpenness, kOutflows, 0.957, "<.0001", 35},
};

constexpr double kCorrTol = 0.001;
constexpr double kPTol = 0.0005;

Outcome criterion1() {
  Outcome o;
  double seconds = 0;
  const auto report = reference_report(&seconds);
  o.require(seconds < 1.0, fmt("runtime %.3fs", seconds));
  int bad = 0;
  for (const auto& c : kTable) {
    const auto& cell = report.correlations(c.row, c.col);
    const std::string name = std::string(kVariableNames[static_cast<std::size_t>(c.row)]) + "-" +
                             std::string(kVariableNames[static_cast<std::size_t>(c.col)]);
    if (!cell) {
      o.require(false, name + " missing");
      ++bad;
      continue;
    }
    bool ok = std::abs(cell->r - c.r) <= kCorrTol && cell->n == c.n;
    const std::string shown(c.p);
    if (shown == "<.0001") ok = ok && cell->p < 0.0001;
    else ok = ok && std::abs(cell->p - std::stod(shown)) <= kPTol;
    if (!ok) {
      ++bad;
      o.require(false, name + fmt(" r=%.5f (want %.5f) p=%.4g", cell->r, c.r, cell->p) + " n=" + std::to_string(cell->n));
    }
  }
  if (bad) o.detail = std::to_string(bad) + "/" + std::to_string(kTable.size()) + " cells off: " + o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto report = reference_report();
  if (!report.openness) return {false, report.openness_error};
  const auto& pca = report.openness->pca;
  const double want[4] = {0.504435, 0.531304, 0.519326, 0.439957};
  for (int i = 0; i < 4; ++i)
    o.require(std::abs(pca.loadings(i) - want[i]) <= 0.01, fmt("loading %g = %.6f (want %.6f)", i, pca.loadings(i), want[i]));
  o.require(std::abs(pca.eigenvalue - 3.3) <= 0.05, fmt("eigenvalue %.4f", pca.eigenvalue));
  o.require(std::abs(pca.variance_share - 0.81) <= 0.01, fmt("share %.4f", pca.variance_share));
  if (o.pass) o.detail = fmt("eigenvalue %.4f share %.4f", pca.eigenvalue, pca.variance_share);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto report = reference_report();
  if (!report.regression) return {false, report.regression_error};
  const auto& r = *report.regression;
  const double stand[3] = {0.77953, 0.26333, 0.08319};
  for (int i = 0; i < 3; ++i)
    o.require(std::abs(r.coefficients[static_cast<std::size_t>(i)].standardized - stand[i]) <= 0.001,
              fmt("standardized %g = %.5f (want %.5f)", i, r.coefficients[static_cast<std::size_t>(i)].standardized, stand[i]));
  o.require(std::abs(r.intercept.estimate - 1.01373) <= 0.001, fmt("intercept %.5f", r.intercept.estimate));
  o.require(std::abs(r.coefficients[0].t - 6.21) <= 0.01, fmt("t(Openness) %.4f", r.coefficients[0].t));
  o.require(std::abs(r.adj_r2 - 0.5273) <= 0.001, fmt("adj R2 %.5f", r.adj_r2));
  o.require(r.n == 35, "N = " + std::to_string(r.n));
  for (int i = 1; i < 3; ++i) {
    const double v = r.coefficients[static_cast<std::size_t>(i)].vif;
    o.require(v >= 3.0 && v <= 4.0, fmt("VIF %g = %.3f", i, v));
  }
  if (o.pass) o.detail = fmt("t=%.4f adjR2=%.5f", r.coefficients[0].t, r.adj_r2);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto report = reference_report();
  std::map<std::string, Quadrant> q;
  for (const auto& p : report.scatter) q[p.country_code] = p.quadrant;
  for (const char* c : {"CH", "SG", "NL", "DK", "GB"})
    o.require(q.contains(c) && q[c] == Quadrant::TopRight, std::string(c) + " not top-right");
  for (const char* c : {"RU", "TR", "CN", "JP"})
    o.require(q.contains(c) && q[c] == Quadrant::BottomLeft, std::string(c) + " not bottom-left");
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int pubs = 0;
  while (pubs < 1000) {
    const auto corpus = testing::random_corpus(rng, 50);
    for (const auto& [id, p] : corpus) {
      if (pubs++ >= 1000) break;
      const auto w = country_weights(p);
      double sum = 0;
      for (const auto& [c, x] : w.weights) sum += x;
      o.require(std::abs(sum - 1.0) <= 1e-12, id + fmt(" sums to %.17g", sum));
      for (const auto& [c, x] : oracle::weights(p)) o.require(std::abs(w.weights.at(c) - x.value()) <= 1e-15, id + " " + c);
    }
  }
  const auto ex = country_weights(testing::pub("ex", 2013, {"F"}, {{"A"}, {"A"}, {"B"}}, 0));
  o.require(ex.weights.size() == 2 && ex.weights.at("A") == 2.0 / 3.0 && ex.weights.at("B") == 1.0 / 3.0,
            "2/3-1/3 example");
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto corpus = testing::random_corpus(rng, 50);
    const auto weights = all_country_weights(corpus);
    const auto b = build_baselines(corpus, FwciMode::AllSubjects);
    const auto r = frac_fwci(corpus, b, weights);
    std::map<std::string, std::map<std::string, double>> f;
    for (const auto& [id, p] : corpus)
      for (const auto& [c, x] : oracle::weights(p)) f[c][id] = x.value();
    for (const auto& [c, per_pub] : f) {
      const double expect = oracle::frac_fwci(corpus, per_pub, true);
      if (std::isnan(expect)) {
        o.require(!r.countries.contains(c), c + " should be absent");
        continue;
      }
      if (!r.countries.contains(c)) {
        o.require(false, c + " missing");
        continue;
      }
      worst = std::max(worst, std::abs(r.countries.at(c).frac_fwci - expect));
    }
    std::vector<CountryWeightVector> world;
    for (const auto& [id, p] : corpus) world.push_back({id, {{"WORLD", 1.0}}});
    const auto w = frac_fwci(corpus, b, world);
    if (w.countries.contains("WORLD"))
      o.require(std::abs(w.countries.at("WORLD").frac_fwci - 1.0) <= 1e-6,
                fmt("world %.12f", w.countries.at("WORLD").frac_fwci));
  }
  o.require(worst <= 1e-12, fmt("max deviation %.3g", worst));
  if (o.pass) o.detail = fmt("max deviation %.3g", worst);
  return o;
}

Outcome criterion7() {
  Outcome o;
  int strict = 0;
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    auto p = default_synth_params(seed);
    p.multi_field_prob = 0.5;
    for (const auto& [c, m] : compare_modes(generate_synthetic_corpus(p).corpus)) {
      o.require(m.pubs_field >= m.pubs_all, c + fmt(" field %.4f < all %.4f", m.pubs_field, m.pubs_all));
      strict += m.pubs_field > m.pubs_all;
    }
  }
  o.require(strict > 0, "no strict over-count");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::set<std::string>> alphabet = {{"AA"}, {"BB"}, {"AA", "BB"}};
  int checked = 0;
  for (std::size_t len = 2; len <= 4; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= alphabet.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::set<std::string>> seq;
      CareerTimeline t{"a", {}};
      for (std::size_t i = 0, c = code; i < len; ++i, c /= alphabet.size()) {
        seq.push_back(alphabet[c % alphabet.size()]);
        t.events.push_back({2000 + static_cast<int>(i), "p" + std::to_string(i), {seq.back().begin(), seq.back().end()}});
      }
      for (const std::string c : {"AA", "BB"}) {
        const bool present = std::any_of(seq.begin(), seq.end(), [&](const auto& s) { return s.count(c) > 0; });
        if (!present) continue;
        const auto f = classify(t, c);
        const auto e = oracle::mobility(seq, c);
        o.require(f.inflow == e.inflow && f.outflow == e.outflow && f.returnee == e.returnee && f.mobile == e.mobile,
                  "sequence " + std::to_string(code) + " length " + std::to_string(len) + " country " + c);
        ++checked;
      }
    }
  }
  int flags = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = default_synth_params(seed);
    p.mobility_prob = 0.3;
    for (const auto& [id, t] : build_timelines(generate_synthetic_corpus(p).corpus)) {
      if (t.events.size() < 2) continue;
      std::set<std::string> cs;
      for (const auto& e : t.events) cs.insert(e.countries.begin(), e.countries.end());
      for (const auto& c : cs) {
        const auto f = classify(t, c);
        o.require(!f.returnee || f.outflow, id + " returnee without outflow");
        o.require(!f.outflow || f.mobile, id + " outflow without mobile");
        o.require(!f.inflow || f.mobile, id + " inflow without mobile");
        ++flags;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " sequences, " + std::to_string(flags) + " synthetic classifications";
  return o;
}

Outcome criterion9() {
  Outcome o;
  constexpr double tol = 1e-9;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 5 + trial % 6;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      X(i, 0) = nd(rng);
      X(i, 1) = nd(rng);
      y(i) = 1.0 + 2.0 * X(i, 0) - X(i, 1) + nd(rng);
    }
    // Pearson
    const std::vector<double> a(X.col(0).data(), X.col(0).data() + n), b(y.data(), y.data() + n);
    o.require(std::abs(stats::pearson(X.col(0), y) - oracle::pearson(a, b)) <= tol, "pearson");
    // OLS via explicit normal-equation inverse
    Eigen::MatrixXd D(n, 3);
    D << Eigen::VectorXd::Ones(n), X;
    const Eigen::Matrix3d inv = oracle::inverse3(D.transpose() * D);
    const Eigen::Vector3d beta = inv * D.transpose() * y;
    const Eigen::VectorXd resid = y - D * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(n - 3);
    const auto fit = stats::ols(y, X);
    o.require(std::abs(fit.intercept.estimate - beta(0)) <= tol, "ols intercept");
    for (int j = 0; j < 2; ++j) {
      o.require(std::abs(fit.coefficients[static_cast<std::size_t>(j)].estimate - beta(j + 1)) <= tol, "ols beta");
      o.require(std::abs(fit.coefficients[static_cast<std::size_t>(j)].se - std::sqrt(s2 * inv(j + 1, j + 1))) <= tol, "ols se");
    }
    // PCA against Eigen's self-adjoint solver on the correlation matrix
    Eigen::MatrixXd Z(n, 3);
    Z << X, y;
    const Eigen::MatrixXd C = Z.rowwise() - Z.colwise().mean();
    Eigen::MatrixXd R = C.transpose() * C;
    const Eigen::VectorXd d = R.diagonal().cwiseSqrt().cwiseInverse();
    R = d.asDiagonal() * R * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    const auto pca = stats::pca_first(Z);
    o.require(std::abs(pca.eigenvalue - es.eigenvalues()(2)) <= tol, "pca eigenvalue");
    Eigen::VectorXd v = es.eigenvectors().col(2);
    if (v.sum() < 0) v = -v;
    o.require((pca.loadings - v).cwiseAbs().maxCoeff() <= tol, "pca loadings");
    // Jacobi trace
    const auto eig = stats::jacobi_eigen(R);
    o.require(std::abs(eig.values.sum() - 3.0) <= tol, fmt("jacobi sum %.15f", eig.values.sum()));
  }
  o.require(std::abs(stats::pearson_p(0.1137, 36) - 0.5091) <= 0.0005, fmt("pearson_p %.5f", stats::pearson_p(0.1137, 36)));
  o.require(std::abs(stats::incomplete_beta(0.5, 0.5, 0.3) - 0.36901011956554536) <= tol, "incomplete beta");
  o.require(std::abs(stats::student_t_two_sided(1.18, 31.0) - 0.24697624825084966) <= tol, "student t");
  return o;
}

std::string run_cli(const std::vector<std::string>& args, const std::string& in_text, int& code) {
  std::vector<std::string> argv{"sciind"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::istringstream in(in_text);
  std::ostringstream out, err;
  code = cli::run(argv, in, out, err);
  return out.str();
}

Outcome criterion10() {
  Outcome o;
  std::vector<std::string> outputs[2];
  for (int pass = 0; pass < 2; ++pass) {
    const std::string workers = pass == 0 ? "1" : "4";
    int code = 0;
    const auto corpus = run_cli({"synth", "--seed", "42"}, "", code);
    o.require(code == 0, "synth failed");
    outputs[pass].push_back(corpus);
    for (const char* mode : {"field", "all-subjects"}) {
      outputs[pass].push_back(run_cli({"indicators", "--mode", mode, "--workers", workers}, corpus, code));
      o.require(code == 0, "indicators failed");
      outputs[pass].push_back(run_cli({"indicators", "--mode", mode, "--workers", workers, "--format", "json"}, corpus, code));
    }
    outputs[pass].push_back(run_cli({"mobility", "--workers", workers}, corpus, code));
    o.require(code == 0, "mobility failed");
  }
  for (std::size_t i = 0; i < outputs[0].size(); ++i)
    o.require(outputs[0][i] == outputs[1][i], "output " + std::to_string(i) + " differs");
  if (o.pass) o.detail = std::to_string(outputs[0].size()) + " outputs byte-identical, workers 1 vs 4";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"correlation table reproduction", criterion1},  {"openness loadings", criterion2},
      {"regression table", criterion3},                {"scatter quadrants", criterion4},
      {"fractional weight conservation", criterion5},  {"fracFWCI oracle equivalence", criterion6},
      {"field-level over-count", criterion7},          {"mobility oracle", criterion8},
      {"stats kernel oracles", criterion9},            {"pipeline determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %-32s %s%s%s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.empty() ? "" : "  ", o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
