#pragma once

#include <optional>
#include <string>
#include <vector>

#include "speedcheck/stats.hpp"
#include "speedcheck/timing.hpp"

namespace speedcheck {

enum class Decision {
  SpeedupConfirmed,
  NoSpeedupAtConfidence,
  InsufficientRuns,
};

const char* decision_name(Decision d) noexcept;

namespace warning {
inline constexpr const char* kIncoherentLowConfidence = "IncoherentLowConfidence";
inline constexpr const char* kBackToBackRuns = "BackToBackRuns";
inline constexpr const char* kLowRunCount = "LowRunCount";
}  // namespace warning

// Outcome of the speedup decision protocol for one benchmark.
//
// speedup is present exactly when the decision is SpeedupConfirmed, and
// equals baseline_median / optimized_median. welch is absent only for
// InsufficientRuns. Normality results are present only for samples that
// were actually checked (fewer runs than min_runs).
struct SpeedupVerdict {
  std::string benchmark_id;
  Decision decision = Decision::InsufficientRuns;
  double alpha = 0.0;
  std::optional<stats::WelchResult> welch;
  std::optional<double> speedup;
  double baseline_median = 0.0;
  double optimized_median = 0.0;
  std::optional<stats::NormalityResult> baseline_normality;
  std::optional<stats::NormalityResult> optimized_normality;
  std::vector<std::string> warnings;
};

// The classical single-number ratios. Statistically unsound: no
// confidence attaches to any of them. Reported for comparison only,
// never used for decisions.
struct NaiveSpeedups {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double median_ratio = 0.0;
};

inline constexpr int kDefaultMinRuns = 30;

// Decide whether the optimized variant is a statistically supported
// speedup over the baseline at the given confidence level.
//
// Samples with fewer than min_runs observations must first pass the
// Shapiro-Wilk normality check at the same level; a failed (or
// impossible, n < 3) check yields InsufficientRuns. Otherwise the
// one-sided Welch interval for mean(baseline) - mean(optimized) decides:
// a positive lower bound confirms the speedup, measured as the ratio of
// medians.
SpeedupVerdict assess_speedup(const TimingSample& baseline,
                              const TimingSample& optimized,
                              stats::ConfidenceLevel level,
                              int min_runs = kDefaultMinRuns);

NaiveSpeedups naive_speedups(const TimingSample& baseline,
                             const TimingSample& optimized);

}  // namespace speedcheck
