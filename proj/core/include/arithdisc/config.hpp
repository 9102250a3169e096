#pragma once

#include <atomic>
#include <cstdint>

#include "arithdisc/errors.hpp"

namespace arithdisc {

/// Knobs shared by every operation that certifies a strict inequality with
/// enclosures: start at `prec_start` bits, double until `prec_cap`, then
/// report Undecidable instead of silently passing.
struct ExactConfig {
  unsigned prec_start = 16;
  unsigned prec_cap = 1024;
  unsigned jobs = 1;
  // Cooperative cancellation: long-running loops poll this flag.
  const std::atomic<bool>* cancel = nullptr;

  void poll_cancel() const {
    if (cancel && cancel->load(std::memory_order_relaxed)) throw Cancelled();
  }
};

inline ExactConfig& default_config() {
  static ExactConfig cfg;
  return cfg;
}

}  // namespace arithdisc
