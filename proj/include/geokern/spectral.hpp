#pragma once

#include <Eigen/Core>

#include "geokern/kernels.hpp"
#include "geokern/quadrature.hpp"

namespace geokern {

/// Symmetrized Nystrom matrix of the convolution operator on a quadrature:
/// A_ij = sqrt(w_i w_j) K(d(x_i, x_j)) off the diagonal and
/// A_ii = w_i * cell_average(K, w_i). Similar to the weighted Nystrom
/// operator, so its spectrum approximates the L^2(Omega) spectrum.
struct OperatorMatrix {
  Eigen::MatrixXd entries;
  Quadrature quadrature;

  int size() const { return static_cast<int>(entries.rows()); }
};

/// Full eigendecomposition ordered by descending modulus (ties: positive
/// eigenvalue first, then ascending pre-sort index). Eigenvectors are
/// orthonormal columns in the sqrt(w)-weighted coordinates.
struct SpectralResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  Eigen::VectorXd residuals;  // ||A v_j - lambda_j v_j||_2
};

OperatorMatrix assemble(const Quadrature& q, const Kernel& k);

SpectralResult eigensolve(const OperatorMatrix& a);

/// (f, A f) / (f, f); bounded above by the top eigenvalue.
double rayleigh_quotient(const OperatorMatrix& a, const Eigen::VectorXd& f);

/// Double sum w_i w_j u_i u_j K(d_ij) with the cell-averaged diagonal, for a
/// nonnegative node-value vector u; equals (u~, A u~) with u~ = sqrt(w) u.
double bilinear_form(const Quadrature& q, const Kernel& k,
                     const Eigen::VectorXd& u);

/// Operator 2-norm by power iteration (independent of eigensolve).
double spectral_norm(const OperatorMatrix& a);

struct JentschReport {
  bool lambda1_positive = false;
  bool simple = false;
  bool eigenfunction_positive = false;
  double gap = 0.0;  // |lambda_1| - |lambda_2|, reported even when tiny
};

/// Checks the discrete counterpart of the positivity statement for the top
/// eigenpair of a positive-entry matrix: lambda_1 > 0, the modulus gap
/// exceeds gap_tol * |lambda_1|, and u_1 is single-signed up to sign_tol.
JentschReport jentsch_check(const SpectralResult& r, double gap_tol,
                            double sign_tol);

}  // namespace geokern
