#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arithdisc/patch.hpp"

namespace arithdisc {

inline const char* kToolVersion = "arithdisc 0.1.0";

std::string to_string(CheckStatus s);

/// Machine-readable verification report.  Overall status: fail if any entry
/// fails, undecidable if none fail and some are undecidable, else pass;
/// entry-level errors dominate everything.
struct Report {
  nlohmann::json scenario_echo;
  std::vector<CheckEntry> entries;
  double elapsed_seconds = 0.0;
  std::string version = kToolVersion;

  CheckStatus overall() const;
  /// 0 pass, 1 fail/undecidable, 2 error.
  int exit_code() const;
  nlohmann::json to_json() const;
};

}  // namespace arithdisc
