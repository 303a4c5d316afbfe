#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "speedcheck/timing.hpp"

namespace speedcheck {

// One run of one benchmark variant. The measured time is kept as the
// decimal text it was recorded with; files stay diffable and round-trip
// byte for byte.
struct TimingRow {
  std::string benchmark_id;
  std::string variant;
  int run_index = 0;  // 1-based
  std::string time_text;
  double time_seconds = 0.0;
  std::string captured_at;
};

// The raw timing file: a versioned header carrying the environment
// record, then one comma-separated row per run.
struct TimingFile {
  int version = 1;
  EnvironmentRecord environment;
  std::vector<TimingRow> rows;
};

// Format a wall-clock duration the way the harness records it
// (6 decimal digits).
std::string format_seconds(double seconds);

std::string serialize(const TimingFile& file);
TimingFile parse_timing_file(std::istream& in);
TimingFile parse_timing_file_text(const std::string& text);

TimingFile load_timing_file(const std::string& path);

// Refuses to overwrite unless allow_overwrite is set: raw timing data is
// append-only; re-executions go to new files.
void save_timing_file(const TimingFile& file, const std::string& path,
                      bool allow_overwrite = false);

// Collapse a file into the single (benchmark, variant) sample it holds.
// Files with mixed benchmarks or variants are rejected.
TimingSample to_timing_sample(const TimingFile& file);

}  // namespace speedcheck
