// Batch front-end: loads scenario files or builds one from flags, dispatches
// to the verification modules, and emits machine-readable reports.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arithdisc/json_io.hpp"
#include "arithdisc/scenario.hpp"

using namespace arithdisc;

namespace {

struct CommonFlags {
  std::string report_path;
  ScenarioOverrides overrides;
  unsigned order = 0;
  uint64_t seed = 0;
  std::string field;
  unsigned precision_cap = 0;
  unsigned jobs = 0;

  void attach(CLI::App* app) {
    app->add_option("--order", order, "truncation order N");
    app->add_option("--seed", seed, "deterministic seed");
    app->add_option("--field", field, "builtin field name or JSON file");
    app->add_option("--report", report_path, "write the JSON report to a file");
    app->add_option("--precision-cap", precision_cap,
                    "enclosure precision cap in bits");
    app->add_option("--jobs", jobs, "parallel validation jobs");
  }

  ScenarioOverrides to_overrides(const CLI::App* app) const {
    ScenarioOverrides ov;
    if (app->count("--order")) ov.order = order;
    if (app->count("--seed")) ov.seed = seed;
    if (app->count("--field")) ov.field = field;
    if (app->count("--precision-cap")) ov.precision_cap = precision_cap;
    if (app->count("--jobs")) ov.jobs = jobs;
    return ov;
  }
};

int emit(const Report& rep, const std::string& report_path) {
  nlohmann::json j = rep.to_json();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << j.dump(2) << "\n";
    std::cout << "overall: " << to_string(rep.overall()) << " (report: "
              << report_path << ")\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic workbench for arithmetic power series"};
  app.require_subcommand(1);

  int exit_code = 0;

  // hensel --k K --order N
  {
    auto* cmd = app.add_subcommand("hensel", "t-adic root of X^k - (1 - k^2 t)");
    auto flags = std::make_shared<CommonFlags>();
    auto k = std::make_shared<unsigned>(2);
    cmd->add_option("--k", *k, "root exponent")->required();
    flags->attach(cmd);
    cmd->callback([&exit_code, cmd, flags, k]() {
      nlohmann::json sc{{"kind", "hensel"}, {"k", *k}};
      Report rep = execute_scenario(sc, flags->to_overrides(cmd));
      exit_code = emit(rep, flags->report_path);
    });
  }

  // kummer --field F --k K --a coords --order N
  {
    auto* cmd = app.add_subcommand("kummer", "Kummer splitting verification");
    auto flags = std::make_shared<CommonFlags>();
    auto k = std::make_shared<unsigned>(2);
    auto a = std::make_shared<std::vector<std::string>>();
    cmd->add_option("--k", *k, "cyclic order")->required();
    cmd->add_option("--a", *a, "localization base (integral coordinates)");
    flags->attach(cmd);
    cmd->callback([&exit_code, cmd, flags, k, a]() {
      nlohmann::json sc{{"kind", "kummer"}, {"k", *k}};
      if (!a->empty()) {
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& c : *a) coords.push_back(c);
        sc["a"] = coords;
      }
      Report rep = execute_scenario(sc, flags->to_overrides(cmd));
      exit_code = emit(rep, flags->report_path);
    });
  }

  // scenario-file subcommands
  for (const char* kind : {"wdiv", "split", "factor", "root", "patch-drill"}) {
    auto* cmd = app.add_subcommand(
        kind, std::string(kind) + " scenario (JSON file input)");
    auto flags = std::make_shared<CommonFlags>();
    auto path = std::make_shared<std::string>();
    cmd->add_option("--scenario", *path, "scenario JSON file")->required();
    flags->attach(cmd);
    std::string kind_str = kind;
    cmd->callback([&exit_code, cmd, flags, path, kind_str]() {
      Report rep = execute_scenario_file(*path, flags->to_overrides(cmd));
      // The file must agree with the subcommand it was given to.
      if (rep.scenario_echo.is_object() && rep.scenario_echo.contains("kind") &&
          rep.scenario_echo["kind"] != kind_str) {
        rep.entries.insert(rep.entries.begin(),
                           {"scenario/kind", CheckStatus::ErrorStatus,
                            "scenario kind does not match subcommand"});
      }
      exit_code = emit(rep, flags->report_path);
    });
  }

  // run <file>: dispatch on the file's own kind
  {
    auto* cmd = app.add_subcommand("run", "execute any scenario file");
    auto flags = std::make_shared<CommonFlags>();
    auto path = std::make_shared<std::string>();
    cmd->add_option("file", *path, "scenario JSON file")->required();
    flags->attach(cmd);
    cmd->callback([&exit_code, cmd, flags, path]() {
      Report rep = execute_scenario_file(*path, flags->to_overrides(cmd));
      exit_code = emit(rep, flags->report_path);
    });
  }

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
