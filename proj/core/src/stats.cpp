#include "speedcheck/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace speedcheck::stats {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Regularized incomplete beta function, Lentz continued fraction.
double ibeta_cf(double a, double b, double x) {
  constexpr double eps = 3e-16;
  constexpr double fpmin = 1e-300;
  constexpr int max_iter = 10000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

// x and its complement cx = 1 - x are passed separately so callers can
// keep full precision when one of them is tiny.
double ibeta_reg(double a, double b, double x, double cx) {
  if (x <= 0.0) return 0.0;
  if (cx <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const double lx = (x > 0.5) ? std::log1p(-cx) : std::log(x);
  const double lcx = (cx > 0.5) ? std::log1p(-x) : std::log(cx);
  const double front = std::exp(log_front + a * lx + b * lcx);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_cf(a, b, x) / a;
  }
  return 1.0 - front * ibeta_cf(b, a, cx) / b;
}

double polynomial(const double* coeff, int n, double x) {
  // coeff[0] + coeff[1] x + ... + coeff[n-1] x^(n-1)
  double acc = coeff[n - 1];
  for (int i = n - 2; i >= 0; --i) acc = acc * x + coeff[i];
  return acc;
}

void require_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::InvalidArgument,
                std::string(what) + " must lie strictly between 0 and 1");
  }
}

}  // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "sample values must be finite");
    }
  }
}

ConfidenceLevel::ConfidenceLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::InvalidArgument,
                "confidence level must lie strictly between 0 and 1");
  }
}

double mean(const Sample& s) {
  if (s.empty()) throw Error(Errc::EmptySample, "mean of an empty sample");
  const auto& v = s.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(const Sample& s) {
  if (s.empty()) throw Error(Errc::EmptySample, "median of an empty sample");
  std::vector<double> v = s.values();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sample_variance(const Sample& s) {
  if (s.empty()) throw Error(Errc::EmptySample, "variance of an empty sample");
  if (s.size() < 2) {
    throw Error(Errc::InvalidArgument, "variance needs at least two observations");
  }
  const double mu = mean(s);
  double acc = 0.0;
  for (double v : s.values()) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(s.size() - 1);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Wichura's algorithm AS 241 (PPND16). Absolute error below 1e-15 over
// the full open interval.
double normal_quantile(double p) {
  require_probability(p, "probability");

  static const double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2,
      1.9715909503065514427e3,  1.3731693765509461125e4,
      4.5921953931549871457e4,  6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static const double b[8] = {
      1.0,                      4.2313330701600911252e1,
      6.8718700749205790830e2,  5.3941960214247511077e3,
      2.1213794301586595867e4,  3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static const double c[8] = {
      1.42343711074968357734e0,  4.63033784615654529590e0,
      5.76949722146069140550e0,  3.64784832476320460504e0,
      1.27045825245236838258e0,  2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const double d[8] = {
      1.0,                       2.05319162663775882187e0,
      1.67638483018380384940e0,  6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                       5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-6,
      1.42151175831644588870e-9, 2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * polynomial(a, 8, r) / polynomial(b, 8, r);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = polynomial(c, 8, r) / polynomial(d, 8, r);
  } else {
    r -= 5.0;
    x = polynomial(e, 8, r) / polynomial(f, 8, r);
  }
  return (q < 0.0) ? -x : x;
}

double t_cdf(double x, double df) {
  if (!(df > 0.0)) {
    throw Error(Errc::InvalidArgument, "degrees of freedom must be positive");
  }
  if (std::isnan(x)) {
    throw Error(Errc::InvalidArgument, "t statistic must not be NaN");
  }
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  const double t2 = x * x;
  // P(|T| > |x|) = I_{df/(df+x^2)}(df/2, 1/2)
  const double y = df / (df + t2);
  const double cy = t2 / (df + t2);
  const double tail = 0.5 * ibeta_reg(0.5 * df, 0.5, y, cy);
  return (x > 0.0) ? 1.0 - tail : tail;
}

// Monotone bracketing and bisection on the CDF.
double t_quantile(double p, double df) {
  require_probability(p, "probability");
  if (!(df > 0.0)) {
    throw Error(Errc::InvalidArgument, "degrees of freedom must be positive");
  }
  if (p == 0.5) return 0.0;

  double lo;
  double hi;
  if (p > 0.5) {
    lo = 0.0;
    hi = 1.0;
    while (t_cdf(hi, df) < p && hi < 1e300) hi *= 2.0;
  } else {
    hi = 0.0;
    lo = -1.0;
    while (t_cdf(lo, df) > p && lo > -1e300) lo *= 2.0;
  }
  for (int i = 0; i < 500; ++i) {
    const double width = hi - lo;
    if (width <= 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)})) break;
    const double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Royston (1995), algorithm AS R94: the Shapiro-Wilk W statistic with
// normalized approximate weights, and the p-value from the normalizing
// transformations of W (exact for n = 3).
NormalityResult shapiro_wilk(const Sample& s, ConfidenceLevel level) {
  const std::size_t n = s.size();
  if (n < 3 || n > 5000) {
    throw Error(Errc::UnsupportedSampleSize,
                "Shapiro-Wilk needs 3 <= n <= 5000, got n = " + std::to_string(n));
  }

  std::vector<double> x = s.values();
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) {
    throw Error(Errc::ZeroVariance, "sample variance is zero (all values identical)");
  }

  const double nd = static_cast<double>(n);
  std::vector<double> w(n);  // the weight vector a_i
  if (n == 3) {
    w[0] = -std::sqrt(0.5);
    w[1] = 0.0;
    w[2] = std::sqrt(0.5);
  } else {
    // Blom scores m_i and their squared norm.
    std::vector<double> m(n);
    double ssq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = normal_quantile((static_cast<double>(i) + 1.0 - 0.375) / (nd + 0.25));
      ssq += m[i] * m[i];
    }
    const double rsn = 1.0 / std::sqrt(nd);
    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    const double an = polynomial(c1, 6, rsn) + m[n - 1] / std::sqrt(ssq);
    if (n > 5) {
      const double anm1 = polynomial(c2, 6, rsn) + m[n - 2] / std::sqrt(ssq);
      const double phi = (ssq - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
                         (1.0 - 2.0 * an * an - 2.0 * anm1 * anm1);
      w[n - 1] = an;
      w[n - 2] = anm1;
      w[0] = -an;
      w[1] = -anm1;
      const double scale = std::sqrt(phi);
      for (std::size_t i = 2; i + 2 < n; ++i) w[i] = m[i] / scale;
    } else {
      const double phi = (ssq - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
      w[n - 1] = an;
      w[0] = -an;
      const double scale = std::sqrt(phi);
      for (std::size_t i = 1; i + 1 < n; ++i) w[i] = m[i] / scale;
    }
  }

  double xbar = 0.0;
  for (double v : x) xbar += v;
  xbar /= nd;
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    numerator += w[i] * x[i];
    denominator += (x[i] - xbar) * (x[i] - xbar);
  }
  double W = numerator * numerator / denominator;
  W = std::min(W, 1.0);

  double p;
  if (n == 3) {
    p = 6.0 / kPi * (std::asin(std::sqrt(W)) - std::asin(std::sqrt(0.75)));
    p = std::clamp(p, 0.0, 1.0);
  } else {
    const double one_minus_w = 1.0 - W;
    if (one_minus_w <= 0.0) {
      p = 1.0;
    } else if (n <= 11) {
      const double gamma = -2.273 + 0.459 * nd;
      const double y = std::log(one_minus_w);
      if (y >= gamma) {
        p = 0.0;
      } else {
        static const double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
        static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
        const double z = (-std::log(gamma - y) - polynomial(c3, 4, nd)) /
                         std::exp(polynomial(c4, 4, nd));
        p = 1.0 - normal_cdf(z);
      }
    } else {
      static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
      static const double c6[3] = {-0.4803, -0.082676, 0.0030302};
      const double log_n = std::log(nd);
      const double z = (std::log(one_minus_w) - polynomial(c5, 4, log_n)) /
                       std::exp(polynomial(c6, 3, log_n));
      p = 1.0 - normal_cdf(z);
    }
  }

  NormalityResult result;
  result.w_statistic = W;
  result.p_value = p;
  result.alpha = level.value();
  result.passed = p >= 1.0 - level.value();
  return result;
}

WelchResult welch_one_sided(const Sample& a, const Sample& b, ConfidenceLevel level) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(Errc::InvalidArgument,
                "Welch test needs at least two observations per sample");
  }
  const double va = sample_variance(a);
  const double vb = sample_variance(b);
  if (va == 0.0 && vb == 0.0) {
    throw Error(Errc::ZeroVariance, "both samples have zero variance");
  }
  const double ka = static_cast<double>(a.size());
  const double kb = static_cast<double>(b.size());
  const double qa = va / ka;
  const double qb = vb / kb;
  const double se = std::sqrt(qa + qb);
  const double df =
      (qa + qb) * (qa + qb) / (qa * qa / (ka - 1.0) + qb * qb / (kb - 1.0));
  const double diff = mean(a) - mean(b);

  WelchResult result;
  result.mean_difference = diff;
  result.degrees_of_freedom = df;
  result.t_statistic = diff / se;
  result.alpha = level.value();
  result.lower_bound = diff - t_quantile(level.value(), df) * se;
  return result;
}

}  // namespace speedcheck::stats
