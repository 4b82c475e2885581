#pragma once
// Cyclic Jacobi eigendecomposition for dense symmetric matrices.
//
// Deliberately the classical textbook algorithm: it is simple, numerically
// self-correcting, and more than fast enough at the sizes spectral cuts run
// at (n <= 4096 guard, typically n <= a few hundred).  Returns eigenvalues
// ascending with matching eigenvectors, plus the worst residual
// ||A x - lambda x|| / max(1, ||x||) across pairs as a certificate.

#include <cstdint>
#include <vector>

namespace cubelab {

struct EigenDecomposition {
  int n = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major: vectors[i*n + j] = x_i[j]
  double max_residual = 0.0;
  int sweeps = 0;
};

// matrix is row-major n x n and must be symmetric (checked up to 1e-12).
EigenDecomposition jacobi_eigen_symmetric(const std::vector<double>& matrix,
                                          int n);

}  // namespace cubelab
