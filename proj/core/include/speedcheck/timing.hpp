#pragma once

#include <cstddef>
#include <string>

#include "speedcheck/stats.hpp"

namespace speedcheck {

// Snapshot of the machine state when a plan was executed. Recorded, not
// controlled: run-to-run variation is handled statistically downstream.
struct EnvironmentRecord {
  std::string host;
  std::string os;
  std::string cpu_model;
  std::string captured_at;  // ISO-8601 UTC, e.g. 2026-08-10T09:12:34Z
  std::size_t env_bytes = 0;  // total size of the process environment
  std::string env_hash;       // order-independent fingerprint of the environment
  double load1 = 0.0;         // 1-minute load average at capture
  double spawn_overhead_seconds = 0.0;  // timed no-op spawn, for transparency
};

// One program variant's observed execution times plus provenance.
struct TimingSample {
  std::string benchmark_id;
  std::string variant;
  stats::Sample times;  // seconds, strictly positive
  EnvironmentRecord metadata;

  // Throws InvalidTiming unless every time is strictly positive and the
  // identifying fields are nonempty.
  void validate() const;
};

}  // namespace speedcheck
