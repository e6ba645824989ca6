#include "app.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cmap::cli {

namespace {

void add_common(CLI::App* sub, RunConfig& cfg, std::string& sample, std::vector<std::string>& tols,
                std::string& points, std::string& json) {
  sub->add_option("--prepotential", cfg.prepotential, "Prepotential JSON document")->required();
  sub->add_option("--lattice", cfg.lattice, "Lattice JSON document or `standard`");
  auto* pts = sub->add_option("--points", points, "Points JSON document");
  sub->add_option("--sample", sample, "Box sampler center,radius,count,seed")->excludes(pts);
  sub->add_option("--tol", tols, "Tolerance override NAME=VAL (repeatable)");
  sub->add_option("--json", json, "Also write the JSON Lines report to PATH");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid c-map verification toolkit", "cmap"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string sample, points, json;
  std::vector<std::string> tols;

  auto* check = app.add_subcommand("check", "Run verification suites over a point set");
  add_common(check, cfg, sample, tols, points, json);
  check->add_option("--suite", cfg.suites, "Suite to run (repeatable; default all)");
  auto* metric = app.add_subcommand("metric", "Print G, its inverse, signature and eigenvalues per point");
  add_common(metric, cfg, sample, tols, points, json);
  auto* moduli = app.add_subcommand("moduli", "Formal moduli, Hodge and Jacobian records for a cone prepotential");
  add_common(moduli, cfg, sample, tols, points, json);

  std::vector<std::string> argv_store(args.begin(), args.end());
  std::reverse(argv_store.begin(), argv_store.end());
  if (!argv_store.empty()) argv_store.pop_back();  // program name
  try {
    app.parse(argv_store);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "cmap: " << e.what() << '\n';
    return kExitConfig;
  }

  Report report;
  try {
    if (!points.empty()) cfg.points = points;
    if (!sample.empty()) cfg.sample = parse_sample_spec(sample);
    for (const auto& t : tols) cfg.tolerances.insert(parse_tolerance(t));
    if (!json.empty()) cfg.json = json;

    if (check->parsed())
      report = run_check(cfg, err);
    else if (metric->parsed())
      report = run_metric(cfg, err);
    else
      report = run_moduli(cfg, err);
  } catch (const Error& e) {
    err << "cmap: " << e.what() << '\n';
    return kExitConfig;
  }

  report.write(out);
  if (cfg.json) {
    std::ofstream f(*cfg.json);
    if (!f) {
      err << "cmap: cannot write " << cfg.json->string() << '\n';
      return kExitConfig;
    }
    report.write(f);
  }
  const Json s = report.summary();
  err << "cmap: " << s.at("passed").get<int>() << "/" << s.at("total").get<int>() << " checks passed\n";
  return report.all_passed() ? kExitPass : kExitFailed;
}

}  // namespace cmap::cli
