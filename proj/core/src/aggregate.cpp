#include "speedcheck/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace speedcheck {

const char* weight_kind_name(WeightKind k) noexcept {
  switch (k) {
    case WeightKind::MedianProportional: return "median-proportional";
    case WeightKind::Uniform: return "uniform";
    case WeightKind::UserSupplied: return "user-supplied";
  }
  return "unknown";
}

const char* proportion_method_name(ProportionMethod m) noexcept {
  switch (m) {
    case ProportionMethod::Wald: return "wald";
    case ProportionMethod::WilsonContinuity: return "wilson-cc";
  }
  return "unknown";
}

GainReport overall_gain(const std::vector<SpeedupVerdict>& verdicts,
                        const WeightScheme& scheme, bool include_slowdowns) {
  GainReport report;
  report.include_slowdowns = include_slowdowns;
  report.weights = scheme.kind;

  std::vector<const SpeedupVerdict*> included;
  for (const SpeedupVerdict& v : verdicts) {
    const bool tested = v.decision != Decision::InsufficientRuns;
    const bool enters =
        v.decision == Decision::SpeedupConfirmed || (include_slowdowns && tested);
    if (enters) {
      included.push_back(&v);
    } else {
      report.excluded.push_back(v.benchmark_id);
    }
  }
  if (included.empty()) {
    throw Error(Errc::NothingToAggregate,
                "no verdict qualifies for aggregation (nothing confirmed)");
  }

  std::vector<double> raw_weights;
  raw_weights.reserve(included.size());
  for (const SpeedupVerdict* v : included) {
    if (!(v->baseline_median > 0.0) || !(v->optimized_median > 0.0)) {
      throw Error(Errc::InvalidTiming,
                  "benchmark '" + v->benchmark_id + "' has a non-positive median");
    }
    switch (scheme.kind) {
      case WeightKind::MedianProportional:
        raw_weights.push_back(v->baseline_median);
        break;
      case WeightKind::Uniform:
        raw_weights.push_back(1.0);
        break;
      case WeightKind::UserSupplied: {
        auto it = scheme.user_weights.find(v->benchmark_id);
        if (it == scheme.user_weights.end()) {
          throw Error(Errc::InvalidArgument,
                      "no user weight for benchmark '" + v->benchmark_id + "'");
        }
        if (!(it->second > 0.0)) {
          throw Error(Errc::InvalidArgument,
                      "user weight for '" + v->benchmark_id + "' must be positive");
        }
        raw_weights.push_back(it->second);
        break;
      }
    }
  }

  double weight_sum = 0.0;
  for (double w : raw_weights) weight_sum += w;

  double weighted_baseline = 0.0;
  double weighted_optimized = 0.0;
  double min_alpha = 1.0;
  for (std::size_t i = 0; i < included.size(); ++i) {
    const SpeedupVerdict& v = *included[i];
    GainRow row;
    row.benchmark_id = v.benchmark_id;
    row.weight = raw_weights[i] / weight_sum;
    row.baseline_median = v.baseline_median;
    row.optimized_median = v.optimized_median;
    row.weighted_gain = row.weight * (v.baseline_median - v.optimized_median);
    row.alpha = v.alpha;
    weighted_baseline += row.weight * row.baseline_median;
    weighted_optimized += row.weight * row.optimized_median;
    min_alpha = std::min(min_alpha, v.alpha);
    report.included.push_back(std::move(row));
  }

  report.overall_gain = 1.0 - weighted_optimized / weighted_baseline;
  report.aggregate_alpha = min_alpha;
  return report;
}

BannedMeans banned_means(const std::vector<double>& speedups) {
  if (speedups.empty()) {
    throw Error(Errc::InvalidArgument, "banned means need at least one speedup");
  }
  double sum = 0.0;
  double log_sum = 0.0;
  double inv_sum = 0.0;
  for (double s : speedups) {
    if (!(s > 0.0)) {
      throw Error(Errc::InvalidArgument, "speedups must be positive");
    }
    sum += s;
    log_sum += std::log(s);
    inv_sum += 1.0 / s;
  }
  const double n = static_cast<double>(speedups.size());
  BannedMeans means;
  means.arithmetic = sum / n;
  means.geometric = std::exp(log_sum / n);
  means.harmonic = n / inv_sum;
  return means;
}

ProportionEstimate proportion_ci(int p, int n, stats::ConfidenceLevel level,
                                 ProportionMethod method) {
  if (p <= 0 || n <= 0 || p > n) {
    throw Error(Errc::InvalidArgument,
                "need 0 < p <= n, got p = " + std::to_string(p) +
                    ", n = " + std::to_string(n));
  }
  // n*C = p: the interval formulas are invalid below 10 successes.
  if (p < 10) {
    throw Error(Errc::GuardViolated,
                "proportion interval needs n*C >= 10, got " + std::to_string(p));
  }

  const double nd = static_cast<double>(n);
  const double c = static_cast<double>(p) / nd;
  const double z = stats::normal_quantile((1.0 + level.value()) / 2.0);

  ProportionEstimate estimate;
  estimate.accelerated = p;
  estimate.total = n;
  estimate.proportion = c;
  estimate.alpha = level.value();
  estimate.method = method;

  if (method == ProportionMethod::Wald) {
    const double r = z * std::sqrt(c * (1.0 - c) / nd);
    estimate.half_width = r;
    estimate.low = std::max(0.0, c - r);
    estimate.high = std::min(1.0, c + r);
  } else {
    // Wilson score interval with continuity correction 0.5/n.
    const double z22n = z * z / (2.0 * nd);
    const double shifted_up = c + 0.5 / nd;
    estimate.high =
        shifted_up >= 1.0
            ? 1.0
            : (shifted_up + z22n +
               z * std::sqrt(shifted_up * (1.0 - shifted_up) / nd + z22n / (2.0 * nd))) /
                  (1.0 + 2.0 * z22n);
    const double shifted_down = c - 0.5 / nd;
    estimate.low =
        shifted_down <= 0.0
            ? 0.0
            : (shifted_down + z22n -
               z * std::sqrt(shifted_down * (1.0 - shifted_down) / nd +
                             z22n / (2.0 * nd))) /
                  (1.0 + 2.0 * z22n);
    estimate.low = std::clamp(estimate.low, 0.0, 1.0);
    estimate.high = std::clamp(estimate.high, 0.0, 1.0);
  }
  return estimate;
}

SampleSizeEstimate min_sample_size(double proportion, double precision,
                                   stats::ConfidenceLevel level) {
  if (!(proportion > 0.0 && proportion < 1.0)) {
    throw Error(Errc::InvalidArgument, "proportion must lie strictly between 0 and 1");
  }
  if (!(precision > 0.0 && precision < 1.0)) {
    throw Error(Errc::InvalidArgument, "precision must lie strictly between 0 and 1");
  }
  const double z = stats::normal_quantile((1.0 + level.value()) / 2.0);
  SampleSizeEstimate estimate;
  estimate.raw = z * z * proportion * (1.0 - proportion) / (precision * precision);
  estimate.count = std::max(1L, static_cast<long>(std::ceil(estimate.raw)));
  return estimate;
}

}  // namespace speedcheck
