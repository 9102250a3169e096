#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "arithdisc/report.hpp"

namespace arithdisc {

/// Command-line overrides applied on top of a scenario document.
struct ScenarioOverrides {
  std::optional<unsigned> order;
  std::optional<uint64_t> seed;
  std::optional<std::string> field;
  std::optional<unsigned> precision_cap;
  std::optional<unsigned> jobs;
};

/// Execute a scenario document
///   {"kind": "hensel"|"kummer"|"wdiv"|"split"|"factor"|"root"|"patch-drill",
///    ... kind-specific parameters ...,
///    "order": N, "seed": S, "precision_cap": bits}
/// deterministically; the report echoes the effective scenario.
Report execute_scenario(nlohmann::json scenario,
                        const ScenarioOverrides& overrides = {});

/// Load from file, then execute.  Schema errors surface as error entries
/// (exit code 2 via Report::exit_code).
Report execute_scenario_file(const std::string& path,
                             const ScenarioOverrides& overrides = {});

}  // namespace arithdisc
