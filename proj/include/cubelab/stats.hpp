#pragma once
// Statistical helpers: regularized incomplete gamma functions, chi-square
// tail probabilities, and a goodness-of-fit routine with small-cell pooling.

#include <cstdint>
#include <vector>

namespace cubelab {

// Regularized lower incomplete gamma P(a, x) = gamma(a,x) / Gamma(a).
double regularized_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
double chi_square_p_value(double statistic, double df);

struct ChiSquareResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  int cells_used = 0;     // after pooling
  int cells_input = 0;    // before pooling
  bool degenerate = false;  // fewer than 2 cells survived pooling
};

// Pearson goodness-of-fit of observed counts against expected counts.
// Cells with expected count below min_expected are pooled into the smallest
// neighbouring cell mass (greedy, deterministic: repeatedly merge the cell
// with the smallest expectation into the next smallest).  df = cells - 1.
ChiSquareResult chi_square_goodness_of_fit(
    const std::vector<double>& observed, const std::vector<double>& expected,
    double min_expected = 5.0);

double median(std::vector<double> values);

}  // namespace cubelab
