#pragma once

#include <cstddef>
#include <vector>

#include "speedcheck/error.hpp"

namespace speedcheck::stats {

// An ordered collection of observations (execution times, in the harness
// path). Values must be finite; size requirements are checked by the
// individual operations.
class Sample {
 public:
  Sample() = default;
  explicit Sample(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

 private:
  std::vector<double> values_;
};

// Confidence level, restricted to the open interval (0, 1).
class ConfidenceLevel {
 public:
  explicit ConfidenceLevel(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

struct NormalityResult {
  double w_statistic = 0.0;
  double p_value = 0.0;
  bool passed = false;  // p_value >= 1 - alpha
  double alpha = 0.0;
};

// One-sided comparison of two sample means; the interval for
// mean(a) - mean(b) is [lower_bound, +inf).
struct WelchResult {
  double mean_difference = 0.0;
  double lower_bound = 0.0;
  double degrees_of_freedom = 0.0;
  double t_statistic = 0.0;
  double alpha = 0.0;
};

double mean(const Sample& s);

// Middle order statistic; mean of the two middle order statistics for
// even sizes.
double median(const Sample& s);

// Unbiased sample variance (n - 1 denominator). Needs size >= 2.
double sample_variance(const Sample& s);

// Shapiro-Wilk W test of normality, Royston's approximation (AS R94),
// valid for 3 <= n <= 5000. Zero-variance samples are rejected: the
// statistic is undefined and degenerate timing data indicates a
// measurement fault.
NormalityResult shapiro_wilk(const Sample& s, ConfidenceLevel level);

// Welch two-sample test of mean(a) > mean(b) with Welch-Satterthwaite
// degrees of freedom. Both samples need size >= 2 and at least one must
// have nonzero variance.
WelchResult welch_one_sided(const Sample& a, const Sample& b, ConfidenceLevel level);

// Distribution primitives. Quantiles are accurate to better than 1e-8
// absolute over the practical range.
double normal_cdf(double x);
double normal_quantile(double p);
double t_cdf(double x, double df);
double t_quantile(double p, double df);

}  // namespace speedcheck::stats
