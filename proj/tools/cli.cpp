#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sciind/analysis.hpp"
#include "sciind/corpus.hpp"
#include "sciind/country_table.hpp"
#include "sciind/fractional.hpp"
#include "sciind/impact.hpp"
#include "sciind/mobility.hpp"
#include "sciind/report.hpp"
#include "sciind/synth.hpp"

namespace sciind::cli {

namespace {

using nlohmann::ordered_json;

struct Input {
  std::string name;
  std::string bytes;
};

Input read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return {"<stdin>", {std::istreambuf_iterator<char>(in), {}}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read '" + path + "'");
  std::string bytes{std::istreambuf_iterator<char>(f), {}};
  if (f.bad()) throw InputError("cannot read '" + path + "'");
  return {path, std::move(bytes)};
}

template <typename Fn>
void write_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  fn(f);
  if (!f) throw InputError("cannot write '" + path + "'");
}

YearWindow parse_window(const std::string& text) {
  YearWindow w;
  char dash = 0;
  std::istringstream s(text);
  if (!(s >> w.start >> dash >> w.end) || dash != '-' || !s.eof() || w.start > w.end)
    throw CLI::ValidationError("--window", "expected START-END, got '" + text + "'");
  return w;
}

std::string window_text(const YearWindow& w) { return std::to_string(w.start) + "-" + std::to_string(w.end); }

unsigned resolve_workers(unsigned w) { return w ? w : std::max(1u, std::thread::hardware_concurrency()); }

void report_diagnostics(std::ostream& err, const std::string& name, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) err << name << ':' << d.line << ": " << d.message << '\n';
}

ParseResult load_corpus(const Input& input, const YearWindow& window, unsigned workers, std::ostream& err) {
  auto parsed = parse_publications(std::string_view(input.bytes), {window, workers});
  report_diagnostics(err, input.name, parsed.diagnostics);
  if (parsed.unattributed > 0)
    err << input.name << ": " << parsed.unattributed
        << " publication(s) without a resolvable country excluded from indicators\n";
  return parsed;
}

CountryTable load_countries(const Input& input, std::ostream& err) {
  auto table = parse_country_table(std::string_view(input.bytes));
  report_diagnostics(err, input.name, table.diagnostics);
  return table;
}

struct Options {
  std::string pubs, countries, out, truth, format, mode = "all-subjects", window = "1996-2013", years = "2009-2013";
  std::uint64_t seed = 42;
  unsigned workers = 0;
  double mobility_prob = -1, multi_field_prob = -1;
};

int cmd_indicators(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto window = parse_window(o.window);
  const auto workers = resolve_workers(o.workers);
  const auto input = read_input(o.pubs, in);
  const auto parsed = load_corpus(input, window, workers, err);
  const auto& corpus = parsed.corpus;
  const auto mode = o.mode == "field" ? FwciMode::FieldLevel : FwciMode::AllSubjects;

  const auto weights = all_country_weights(corpus, workers);
  const auto counts = fractional_pub_counts(weights);
  FracFwciResult impact{mode, {}};
  if (!corpus.empty()) impact = frac_fwci(corpus, build_baselines(corpus, mode, workers), weights, workers);

  Provenance prov{{{input.name, hex_digest(input.bytes)}}, {{"mode", to_string(mode)}, {"window", window_text(window)}}};
  const auto format = o.format.empty() ? std::string("csv") : o.format;
  if (format == "json") {
    ordered_json j;
    j["provenance"] = provenance_json(prov);
    auto shares = international_share(counts);
    auto frac = ordered_json::array();
    for (const auto& [c, n] : counts.pubs)
      if (shares.contains(c)) frac.push_back({{"country_code", c}, {"frac_pubs", n}, {"int_pct", shares[c]}});
    j["fractional"] = std::move(frac);
    auto imp = ordered_json::array();
    for (const auto& [c, r] : impact.countries)
      imp.push_back({{"country_code", c},
                     {"mode", to_string(mode)},
                     {"frac_fwci", r.frac_fwci},
                     {"weight_mass", r.weight_mass},
                     {"n_pubs", r.n_pubs}});
    j["impact"] = std::move(imp);
    write_output(o.out, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
    return kOk;
  }
  if (format != "csv") throw CLI::ValidationError("--format", "indicators supports csv or json");

  auto fractional_block = [&](std::ostream& s) {
    write_provenance_header(s, prov);
    write_fractional_csv(s, counts);
  };
  auto impact_block = [&](std::ostream& s) {
    write_provenance_header(s, prov);
    write_impact_csv(s, impact);
  };
  if (o.out.empty() || o.out == "-") {
    fractional_block(out);
    out << '\n';
    impact_block(out);
    return kOk;
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw InputError("cannot create directory '" + o.out + "'");
  write_output((std::filesystem::path(o.out) / "fractional.csv").string(), out, fractional_block);
  write_output((std::filesystem::path(o.out) / "impact.csv").string(), out, impact_block);
  return kOk;
}

int cmd_mobility(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto window = parse_window(o.window);
  const auto workers = resolve_workers(o.workers);
  const auto input = read_input(o.pubs, in);
  const auto parsed = load_corpus(input, window, workers, err);
  const auto shares = mobility_shares(parsed.corpus, workers);
  Provenance prov{{{input.name, hex_digest(input.bytes)}}, {{"window", window_text(window)}}};

  const auto format = o.format.empty() ? std::string("csv") : o.format;
  if (format == "json") {
    ordered_json j;
    j["provenance"] = provenance_json(prov);
    auto rows = ordered_json::array();
    for (const auto& [c, s] : shares)
      rows.push_back({{"country_code", c},
                      {"new_inflows", s.new_inflows},
                      {"returnees", s.returnees},
                      {"mobile", s.mobile},
                      {"outflows", s.outflows},
                      {"denominator", s.denominator}});
    j["mobility"] = std::move(rows);
    write_output(o.out, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
    return kOk;
  }
  if (format != "csv") throw CLI::ValidationError("--format", "mobility supports csv or json");
  write_output(o.out, out, [&](std::ostream& s) {
    write_provenance_header(s, prov);
    write_mobility_csv(s, shares);
  });
  return kOk;
}

Provenance country_provenance(const Input& input) { return {{{input.name, hex_digest(input.bytes)}}, {}}; }

int cmd_openness(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto input = read_input(o.countries, in);
  const auto table = load_countries(input, err);
  const auto openness = build_openness(table.rows);
  const auto prov = country_provenance(input);
  const auto format = o.format.empty() ? std::string("text") : o.format;
  write_output(o.out, out, [&](std::ostream& s) {
    if (format == "json") {
      ordered_json j;
      j["provenance"] = provenance_json(prov);
      j["openness"] = openness_json(openness);
      s << j.dump(2) << '\n';
    } else if (format == "csv") {
      write_provenance_header(s, prov);
      write_openness_csv(s, openness);
    } else {
      write_table2(s, openness);
      s << '\n';
      for (const auto& sc : openness.scores)
        s << sc.country_code << "  " << (sc.score ? format_number(*sc.score) : std::string("excluded")) << '\n';
    }
  });
  return kOk;
}

int cmd_analyze(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto input = read_input(o.countries, in);
  const auto table = load_countries(input, err);
  auto report = run_analysis(table.rows);
  report.provenance = country_provenance(input);
  if (!report.openness_error.empty()) err << input.name << ": openness: " << report.openness_error << '\n';
  if (!report.regression_error.empty()) err << input.name << ": regression: " << report.regression_error << '\n';

  const auto format = o.format.empty() ? std::string("text") : o.format;
  write_output(o.out, out, [&](std::ostream& s) {
    if (format == "json") {
      s << report_json(report).dump(2) << '\n';
    } else if (format == "csv") {
      write_provenance_header(s, report.provenance);
      s << "row,col,r,p,n\n";
      const auto k = report.correlations.size();
      for (Eigen::Index i = 1; i < k; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
          s << csv_escape(kVariableNames[static_cast<std::size_t>(i)]) << ','
            << csv_escape(kVariableNames[static_cast<std::size_t>(j)]) << ',';
          if (const auto& c = report.correlations(i, j))
            s << format_number(c->r) << ',' << format_number(c->p) << ',' << c->n << '\n';
          else
            s << ",,\n";
        }
    } else {
      write_text_report(s, report);
    }
  });
  return kOk;
}

int cmd_scatter(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto input = read_input(o.countries, in);
  const auto table = load_countries(input, err);
  const auto points = scatter_points(table.rows, build_openness(table.rows));
  const auto prov = country_provenance(input);
  const auto format = o.format.empty() ? std::string("csv") : o.format;
  if (format != "csv" && format != "json") throw CLI::ValidationError("--format", "scatter supports csv or json");
  write_output(o.out, out, [&](std::ostream& s) {
    if (format == "json") {
      ordered_json j;
      j["provenance"] = provenance_json(prov);
      auto arr = ordered_json::array();
      for (const auto& p : points)
        arr.push_back({{"country_code", p.country_code},
                       {"x", p.x},
                       {"y", p.y},
                       {"size", p.size},
                       {"quadrant", to_string(p.quadrant)}});
      j["scatter"] = std::move(arr);
      s << j.dump(2) << '\n';
    } else {
      write_provenance_header(s, prov);
      write_scatter_csv(s, points);
    }
  });
  return kOk;
}

ordered_json truth_json(const SynthParams& p, const GroundTruth& t) {
  ordered_json j;
  j["provenance"] = {{"version", kVersion}, {"seed", p.seed}};
  j["generated"] = t.generated;
  j["attributed"] = t.attributed;
  auto countries = ordered_json::array();
  for (const auto& [c, n] : t.frac_pubs) {
    ordered_json row{{"country_code", c}, {"frac_pubs", n}};
    const auto intl = t.frac_international.at(c);
    row["int_pct"] = n > 0 ? 100.0 * intl / n : 0.0;
    if (auto m = t.mobility.find(c); m != t.mobility.end())
      row["mobility"] = {{"denominator", m->second.denominator},
                         {"inflow", m->second.inflow},
                         {"outflow", m->second.outflow},
                         {"returnee", m->second.returnee},
                         {"mobile", m->second.mobile}};
    countries.push_back(std::move(row));
  }
  j["countries"] = std::move(countries);
  return j;
}

int cmd_synth(const Options& o, std::ostream& out) {
  auto params = default_synth_params(o.seed);
  const auto window = parse_window(o.years);
  params.first_year = window.start;
  params.last_year = window.end;
  if (o.mobility_prob >= 0) params.mobility_prob = o.mobility_prob;
  if (o.multi_field_prob >= 0) params.multi_field_prob = o.multi_field_prob;
  try {
    validate(params);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("synth", e.what());
  }
  const auto [corpus, truth] = generate_synthetic_corpus(params);
  write_output(o.out, out, [&](std::ostream& s) { write_jsonl(s, corpus); });
  if (!o.truth.empty())
    write_output(o.truth, out, [&](std::ostream& s) { s << truth_json(params, truth).dump(2) << '\n'; });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Country-level science indicators and openness analysis", "sciind"};
  app.require_subcommand(1);
  Options o;
  const auto workers_help = "worker threads (0 = hardware concurrency); output does not depend on it";

  auto* ind = app.add_subcommand("indicators", "publications -> fractional counts and fracFWCI CSVs");
  ind->add_option("--pubs", o.pubs, "JSONL publications (default: stdin)");
  ind->add_option("--mode", o.mode, "FWCI aggregation mode")->check(CLI::IsMember({"field", "all-subjects"}));
  ind->add_option("--format", o.format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
  ind->add_option("--out", o.out, "output directory (default: stdout)");
  ind->add_option("--window", o.window, "observation window START-END");
  ind->add_option("--workers", o.workers, workers_help);

  auto* mob = app.add_subcommand("mobility", "publications -> mobility shares CSV");
  mob->add_option("--pubs", o.pubs, "JSONL publications (default: stdin)");
  mob->add_option("--format", o.format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
  mob->add_option("--out", o.out, "output file (default: stdout)");
  mob->add_option("--window", o.window, "observation window START-END");
  mob->add_option("--workers", o.workers, workers_help);

  auto country_cmd = [&](const char* name, const char* help, const char* formats) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--countries", o.countries, "country indicator CSV (default: stdin)");
    c->add_option("--format", o.format, formats)->check(CLI::IsMember({"text", "csv", "json"}));
    c->add_option("--out", o.out, "output file (default: stdout)");
    return c;
  };
  auto* open = country_cmd("openness", "country table -> openness scores and loadings", "text (default), csv or json");
  auto* ana = country_cmd("analyze", "country table -> correlations, PCA and regression", "text (default), csv or json");
  auto* sca = country_cmd("scatter", "country table -> openness/impact scatter data", "csv (default) or json");

  auto* syn = app.add_subcommand("synth", "generate a seeded synthetic corpus as JSONL");
  syn->add_option("--seed", o.seed, "random seed");
  syn->add_option("--out", o.out, "JSONL output (default: stdout)");
  syn->add_option("--truth", o.truth, "write generator ground truth JSON here");
  syn->add_option("--window", o.years, "publication years START-END (default 2009-2013)");
  syn->add_option("--mobility-prob", o.mobility_prob, "yearly move probability");
  syn->add_option("--multi-field-prob", o.multi_field_prob, "probability of a second field code");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (ind->parsed()) return cmd_indicators(o, in, out, err);
    if (mob->parsed()) return cmd_mobility(o, in, out, err);
    if (open->parsed()) return cmd_openness(o, in, out, err);
    if (ana->parsed()) return cmd_analyze(o, in, out, err);
    if (sca->parsed()) return cmd_scatter(o, in, out, err);
    if (syn->parsed()) return cmd_synth(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const stats::StatsError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsageError;
}

}  // namespace sciind::cli
