#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speedcheck/protocol.hpp"
#include "speedcheck/stats.hpp"

namespace speedcheck {

enum class WeightKind {
  MedianProportional,  // weight proportional to the baseline median
  Uniform,
  UserSupplied,
};

const char* weight_kind_name(WeightKind k) noexcept;

struct WeightScheme {
  WeightKind kind = WeightKind::MedianProportional;
  std::map<std::string, double> user_weights;  // UserSupplied only, positive
};

struct GainRow {
  std::string benchmark_id;
  double weight = 0.0;            // normalized, rows sum to 1
  double baseline_median = 0.0;   // seconds
  double optimized_median = 0.0;  // seconds
  double weighted_gain = 0.0;     // weight * (baseline - optimized), seconds
  double alpha = 0.0;
};

// Weighted overall performance gain G = 1 - sum(W*ET') / sum(W*ET).
// Always < 1; negative when included slowdowns dominate.
struct GainReport {
  std::vector<GainRow> included;
  std::vector<std::string> excluded;  // benchmarks with no confirmed speedup
  double overall_gain = 0.0;
  double aggregate_alpha = 0.0;  // min alpha over the included rows
  bool include_slowdowns = false;
  WeightKind weights = WeightKind::MedianProportional;
};

// The three classical means of a set of speedups. Kept out of every
// decision path; reports label them as rejected for publication.
struct BannedMeans {
  double arithmetic = 0.0;
  double geometric = 0.0;
  double harmonic = 0.0;
};

enum class ProportionMethod {
  Wald,              // C -/+ z*sqrt(C(1-C)/n)
  WilsonContinuity,  // Wilson score interval with continuity correction
};

const char* proportion_method_name(ProportionMethod m) noexcept;

struct ProportionEstimate {
  int accelerated = 0;  // p
  int total = 0;        // n
  double proportion = 0.0;
  double alpha = 0.0;
  ProportionMethod method = ProportionMethod::Wald;
  double low = 0.0;   // clamped to [0, 1]
  double high = 0.0;  // clamped to [0, 1]
  std::optional<double> half_width;  // r, Wald only
};

struct SampleSizeEstimate {
  long count = 0;    // smallest n satisfying the bound, at least 1
  double raw = 0.0;  // z^2 * C(1-C) / r^2 before the ceiling
};

// Aggregate per-benchmark verdicts into the overall gain. With
// include_slowdowns = false only confirmed speedups enter; with true,
// every Welch-tested verdict enters. InsufficientRuns verdicts never
// enter (no test was run) and are always listed as excluded.
GainReport overall_gain(const std::vector<SpeedupVerdict>& verdicts,
                        const WeightScheme& scheme, bool include_slowdowns);

BannedMeans banned_means(const std::vector<double>& speedups);

// Confidence interval for the proportion p/n of accelerated benchmarks.
// Valid only when p >= 10; below that the estimate is refused
// (GuardViolated).
ProportionEstimate proportion_ci(int p, int n, stats::ConfidenceLevel level,
                                 ProportionMethod method);

// Minimal number of benchmarks for a proportion interval of half-width r.
SampleSizeEstimate min_sample_size(double proportion, double precision,
                                   stats::ConfidenceLevel level);

}  // namespace speedcheck
