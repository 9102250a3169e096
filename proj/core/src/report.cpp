#include "arithdisc/report.hpp"

namespace arithdisc {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Undecidable: return "undecidable";
    default: return "error";
  }
}

CheckStatus Report::overall() const {
  bool any_fail = false, any_und = false;
  for (const auto& e : entries) {
    if (e.status == CheckStatus::ErrorStatus) return CheckStatus::ErrorStatus;
    if (e.status == CheckStatus::Fail) any_fail = true;
    if (e.status == CheckStatus::Undecidable) any_und = true;
  }
  if (any_fail) return CheckStatus::Fail;
  if (any_und) return CheckStatus::Undecidable;
  return CheckStatus::Pass;
}

int Report::exit_code() const {
  switch (overall()) {
    case CheckStatus::Pass: return 0;
    case CheckStatus::Fail:
    case CheckStatus::Undecidable: return 1;
    default: return 2;
  }
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario_echo;
  j["version"] = version;
  j["overall"] = to_string(overall());
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    j["entries"].push_back({{"name", e.name},
                            {"status", to_string(e.status)},
                            {"details", e.details}});
  }
  j["timings"] = {{"elapsed_seconds", elapsed_seconds}};
  return j;
}

}  // namespace arithdisc
