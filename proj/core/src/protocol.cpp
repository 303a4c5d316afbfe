#include "speedcheck/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace speedcheck {

void TimingSample::validate() const {
  if (benchmark_id.empty() || variant.empty()) {
    throw Error(Errc::InvalidTiming, "timing sample needs a benchmark id and a variant");
  }
  if (times.empty()) {
    throw Error(Errc::InvalidTiming, "timing sample '" + benchmark_id + "' has no runs");
  }
  for (double t : times.values()) {
    if (!(t > 0.0)) {
      throw Error(Errc::InvalidTiming,
                  "timing sample '" + benchmark_id + "' contains a non-positive time");
    }
  }
}

const char* decision_name(Decision d) noexcept {
  switch (d) {
    case Decision::SpeedupConfirmed: return "SpeedupConfirmed";
    case Decision::NoSpeedupAtConfidence: return "NoSpeedupAtConfidence";
    case Decision::InsufficientRuns: return "InsufficientRuns";
  }
  return "Unknown";
}

SpeedupVerdict assess_speedup(const TimingSample& baseline,
                              const TimingSample& optimized,
                              stats::ConfidenceLevel level, int min_runs) {
  baseline.validate();
  optimized.validate();
  if (baseline.benchmark_id != optimized.benchmark_id) {
    throw Error(Errc::MismatchedInput,
                "benchmark ids differ: '" + baseline.benchmark_id + "' vs '" +
                    optimized.benchmark_id + "'");
  }
  if (baseline.variant == optimized.variant) {
    throw Error(Errc::MismatchedInput,
                "both samples are variant '" + baseline.variant + "'");
  }
  if (min_runs < 1) {
    throw Error(Errc::InvalidArgument, "min_runs must be at least 1");
  }

  SpeedupVerdict verdict;
  verdict.benchmark_id = baseline.benchmark_id;
  verdict.alpha = level.value();
  verdict.baseline_median = stats::median(baseline.times);
  verdict.optimized_median = stats::median(optimized.times);

  // Step 1: samples below the run threshold must look normal.
  bool insufficient = false;
  auto check_normality = [&](const TimingSample& ts)
      -> std::optional<stats::NormalityResult> {
    if (ts.times.size() >= static_cast<std::size_t>(min_runs)) return std::nullopt;
    if (ts.times.size() < 3) {
      // Too few runs to even check normality.
      insufficient = true;
      return std::nullopt;
    }
    stats::NormalityResult r = stats::shapiro_wilk(ts.times, level);
    if (!r.passed) insufficient = true;
    return r;
  };
  verdict.baseline_normality = check_normality(baseline);
  verdict.optimized_normality = check_normality(optimized);
  if (insufficient) {
    verdict.decision = Decision::InsufficientRuns;
    return verdict;
  }

  // Step 2: one-sided Welch interval for mean(baseline) - mean(optimized).
  stats::WelchResult welch =
      stats::welch_one_sided(baseline.times, optimized.times, level);
  verdict.welch = welch;
  if (welch.lower_bound > 0.0) {
    // Step 3: the speedup is meaningful only now; measured on medians.
    verdict.decision = Decision::SpeedupConfirmed;
    verdict.speedup = verdict.baseline_median / verdict.optimized_median;
    if (*verdict.speedup < 1.0) {
      verdict.warnings.push_back(warning::kIncoherentLowConfidence);
    }
  } else {
    verdict.decision = Decision::NoSpeedupAtConfidence;
  }
  return verdict;
}

NaiveSpeedups naive_speedups(const TimingSample& baseline,
                             const TimingSample& optimized) {
  baseline.validate();
  optimized.validate();
  const auto& b = baseline.times.values();
  const auto& o = optimized.times.values();
  if (b.empty() || o.empty()) {
    throw Error(Errc::EmptySample, "naive speedups need nonempty samples");
  }
  NaiveSpeedups ratios;
  ratios.min_ratio = *std::min_element(b.begin(), b.end()) /
                     *std::min_element(o.begin(), o.end());
  ratios.max_ratio = *std::max_element(b.begin(), b.end()) /
                     *std::max_element(o.begin(), o.end());
  ratios.mean_ratio = stats::mean(baseline.times) / stats::mean(optimized.times);
  ratios.median_ratio = stats::median(baseline.times) / stats::median(optimized.times);
  return ratios;
}

}  // namespace speedcheck
