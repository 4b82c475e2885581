#include "cubelab/eigen_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cubelab/errors.hpp"

namespace cubelab {

EigenDecomposition jacobi_eigen_symmetric(const std::vector<double>& matrix,
                                          int n) {
  if (n < 1 || n > 4096) {
    throw GuardError("jacobi eigensolver accepts 1 <= n <= 4096");
  }
  if (matrix.size() != static_cast<std::size_t>(n) * n) {
    throw GuardError("matrix size does not match n");
  }
  std::vector<double> a = matrix;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::fabs(a[i * static_cast<std::size_t>(n) + j] -
                    a[j * static_cast<std::size_t>(n) + i]) > 1e-12) {
        throw GuardError("jacobi eigensolver needs a symmetric matrix");
      }
    }
  }
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  // Eigenvector accumulator V, starts as identity; columns become vectors.
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
  auto vat = [&](int i, int j) -> double& {
    return v[static_cast<std::size_t>(i) * n + j];
  };

  double frobenius = 0.0;
  for (double x : matrix) frobenius += x * x;
  frobenius = std::sqrt(frobenius);

  EigenDecomposition out;
  out.n = n;
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (std::sqrt(2.0 * off) < 1e-15 * std::max(1.0, frobenius)) break;

    for (int pp = 0; pp < n - 1; ++pp) {
      for (int qq = pp + 1; qq < n; ++qq) {
        const double apq = at(pp, qq);
        if (apq == 0.0) continue;
        const double app = at(pp, pp);
        const double aqq = at(qq, qq);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) +
                          std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        at(pp, pp) = app - t * apq;
        at(qq, qq) = aqq + t * apq;
        at(pp, qq) = 0.0;
        at(qq, pp) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != pp && r != qq) {
            const double arp = at(r, pp);
            const double arq = at(r, qq);
            at(r, pp) = arp - s * (arq + tau * arp);
            at(r, qq) = arq + s * (arp - tau * arq);
            at(pp, r) = at(r, pp);
            at(qq, r) = at(r, qq);
          }
          const double vrp = vat(r, pp);
          const double vrq = vat(r, qq);
          vat(r, pp) = vrp - s * (vrq + tau * vrp);
          vat(r, qq) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  out.sweeps = sweep;

  // Sort eigenpairs ascending by value.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return at(x, x) < at(y, y); });
  out.values.resize(n);
  out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    const int col = order[r];
    out.values[r] = at(col, col);
    for (int i = 0; i < n; ++i) {
      out.vectors[static_cast<std::size_t>(r) * n + i] = vat(i, col);
    }
  }

  // Residual certificate against the ORIGINAL matrix.
  double worst = 0.0;
  for (int r = 0; r < n; ++r) {
    double norm2 = 0.0;
    double res2 = 0.0;
    const double lambda = out.values[r];
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        row += matrix[static_cast<std::size_t>(i) * n + j] *
               out.vectors[static_cast<std::size_t>(r) * n + j];
      }
      const double xi = out.vectors[static_cast<std::size_t>(r) * n + i];
      const double diff = row - lambda * xi;
      res2 += diff * diff;
      norm2 += xi * xi;
    }
    worst = std::max(worst, std::sqrt(res2) /
                                std::max(1.0, std::sqrt(norm2)));
  }
  out.max_residual = worst;
  if (sweep >= kMaxSweeps) {
    throw InvariantError("jacobi sweeps failed to converge in " +
                         std::to_string(kMaxSweeps) + " sweeps");
  }
  return out;
}

}  // namespace cubelab
