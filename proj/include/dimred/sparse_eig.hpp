#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dimred {

struct ShiftInvertOptions {
  int n_pairs = 6;
  int max_basis = 220;
  double tol = 1e-10;  // residual tolerance in the inverted metric
  std::uint64_t seed = 1;
};

struct EigenPairs {
  std::vector<double> values;            // ascending
  std::vector<Eigen::VectorXd> vectors;  // orthonormal
  std::vector<double> residuals;         // ||A^-1 x - mu x|| / mu, per pair
  int iterations = 0;
};

/// Smallest eigenpairs of the SPD generalized problem A x = lambda M x with
/// diagonal M, via Lanczos with full reorthogonalization on the inverse of
/// the mass-scaled operator (factorized once).  Deterministic for a fixed
/// seed.  Returned vectors are M-orthonormal.
EigenPairs smallest_eigenpairs(const Eigen::SparseMatrix<double>& A,
                               const Eigen::VectorXd& M_diag,
                               const ShiftInvertOptions& opts);

/// Lowest eigenvalues (and optionally vectors) of a symmetric tridiagonal
/// generalized problem T x = lambda diag(m) x by Sturm bisection plus
/// inverse iteration.  diag/off are the tridiagonal entries of T.
struct TridiagPairs {
  std::vector<double> values;
  std::vector<Eigen::VectorXd> vectors;
};

TridiagPairs tridiag_smallest(const std::vector<double>& diag,
                              const std::vector<double>& off,
                              const std::vector<double>& mass, int n_pairs,
                              bool want_vectors);

}  // namespace dimred
