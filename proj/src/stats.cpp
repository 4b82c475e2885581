#include "cubelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cubelab/errors.hpp"

namespace cubelab {

namespace {

// Series expansion for P(a, x), effective for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), effective for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw GuardError("incomplete gamma needs a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw GuardError("incomplete gamma needs a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_square_p_value(double statistic, double df) {
  if (statistic < 0.0 || df < 0.0) {
    throw GuardError("chi-square wants nonnegative statistic and df");
  }
  if (df == 0.0) return statistic <= 0.0 ? 1.0 : 0.0;
  return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_goodness_of_fit(
    const std::vector<double>& observed, const std::vector<double>& expected,
    double min_expected) {
  if (observed.size() != expected.size()) {
    throw GuardError("observed/expected size mismatch");
  }
  if (observed.empty()) {
    throw GuardError("goodness of fit needs at least one cell");
  }
  for (double e : expected) {
    if (!(e > 0.0)) {
      throw GuardError("expected counts must be positive");
    }
  }
  ChiSquareResult r;
  r.cells_input = static_cast<int>(observed.size());

  std::vector<double> obs = observed;
  std::vector<double> exp = expected;
  // Greedy pooling: while the smallest expectation is under the floor and
  // more than one cell remains, merge it into the next-smallest cell.
  while (exp.size() > 1) {
    std::size_t lo = 0;
    for (std::size_t i = 1; i < exp.size(); ++i) {
      if (exp[i] < exp[lo]) lo = i;
    }
    if (exp[lo] >= min_expected) break;
    std::size_t target = lo == 0 ? 1 : 0;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (i != lo && exp[i] < exp[target]) target = i;
    }
    exp[target] += exp[lo];
    obs[target] += obs[lo];
    exp.erase(exp.begin() + static_cast<std::ptrdiff_t>(lo));
    obs.erase(obs.begin() + static_cast<std::ptrdiff_t>(lo));
  }

  r.cells_used = static_cast<int>(exp.size());
  if (r.cells_used < 2) {
    r.degenerate = true;
    r.p_value = 1.0;
    return r;
  }
  for (std::size_t i = 0; i < exp.size(); ++i) {
    if (exp[i] <= 0.0) {
      throw GuardError("expected count must be positive after pooling");
    }
    const double diff = obs[i] - exp[i];
    r.statistic += diff * diff / exp[i];
  }
  r.df = static_cast<double>(r.cells_used - 1);
  r.p_value = chi_square_p_value(r.statistic, r.df);
  return r;
}

double median(std::vector<double> values) {
  if (values.empty()) throw GuardError("median of empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace cubelab
