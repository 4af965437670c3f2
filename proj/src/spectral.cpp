#include "geokern/spectral.hpp"

#include <lapacke.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace geokern {

namespace {

void require_admissible(const Quadrature& q, const Kernel& k) {
  if (k.manifold_dim != q.domain.manifold.dim)
    throw std::invalid_argument(
        "kernel was constructed for dimension " +
        std::to_string(k.manifold_dim) + ", quadrature lives in dimension " +
        std::to_string(q.domain.manifold.dim));
}

// Diagonal entries share the cell average whenever weights repeat (always the
// case for equal-weight rules).
class CellAverageCache {
 public:
  CellAverageCache(const Kernel& k, const Manifold& m) : k_(k), m_(m) {}
  double operator()(double w) {
    if (!have_ || w != last_w_) {
      last_value_ = cell_average(k_, m_, w);
      last_w_ = w;
      have_ = true;
    }
    return last_value_;
  }

 private:
  const Kernel& k_;
  const Manifold& m_;
  double last_w_ = 0.0, last_value_ = 0.0;
  bool have_ = false;
};

}  // namespace

OperatorMatrix assemble(const Quadrature& q, const Kernel& k) {
  require_admissible(q, k);
  const int n = q.size();
  if (n < 1) throw std::invalid_argument("assemble: empty quadrature");
  const Manifold& m = q.domain.manifold;

  Eigen::VectorXd root_w = q.weights.array().sqrt();
  Eigen::MatrixXd a(n, n);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = distance(m, q.nodes[i], q.nodes[j]);
      if (d < 1e-12 && k.singular_at_zero())
        throw std::runtime_error("assemble: nodes " + std::to_string(i) +
                                 " and " + std::to_string(j) +
                                 " coincide under a singular kernel");
      double value = root_w[i] * root_w[j] * eval(k, d);
      a(i, j) = value;
      a(j, i) = value;
    }
  }

  CellAverageCache diag(k, m);
  for (int i = 0; i < n; ++i) a(i, i) = q.weights[i] * diag(q.weights[i]);

  return OperatorMatrix{std::move(a), q};
}

SpectralResult eigensolve(const OperatorMatrix& a) {
  const int n = a.size();
  if (n < 1) throw std::invalid_argument("eigensolve: empty matrix");

  // Divide-and-conquer symmetric solver; eigenvalues come back ascending and
  // the input is overwritten by orthonormal eigenvectors (column-major).
  Eigen::MatrixXd vectors = a.entries;
  Eigen::VectorXd raw(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                   vectors.data(), n, raw.data());
  if (info != 0)
    throw std::runtime_error(
        "eigensolve: LAPACK dsyevd failed with info = " + std::to_string(info) +
        (info > 0 ? " (off-diagonal element failed to converge)"
                  : " (illegal argument)"));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    double ai = std::abs(raw[i]), aj = std::abs(raw[j]);
    if (ai != aj) return ai > aj;
    if (raw[i] != raw[j]) return raw[i] > raw[j];  // positive first
    return i < j;
  });

  SpectralResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    result.eigenvalues[j] = raw[order[j]];
    result.eigenvectors.col(j) = vectors.col(order[j]);
  }

  Eigen::MatrixXd image = a.entries * result.eigenvectors;
  result.residuals.resize(n);
  for (int j = 0; j < n; ++j)
    result.residuals[j] =
        (image.col(j) - result.eigenvalues[j] * result.eigenvectors.col(j))
            .norm();
  return result;
}

double rayleigh_quotient(const OperatorMatrix& a, const Eigen::VectorXd& f) {
  if (f.size() != a.size())
    throw std::invalid_argument("rayleigh_quotient: vector length mismatch");
  double norm2 = f.squaredNorm();
  if (norm2 == 0.0)
    throw std::invalid_argument("rayleigh_quotient: zero vector");
  return f.dot(a.entries * f) / norm2;
}

double bilinear_form(const Quadrature& q, const Kernel& k,
                     const Eigen::VectorXd& u) {
  require_admissible(q, k);
  const int n = q.size();
  if (u.size() != n)
    throw std::invalid_argument("bilinear_form: vector length mismatch");
  if ((u.array() < 0.0).any())
    throw std::invalid_argument(
        "bilinear_form: values must be nonnegative (rearrangement setting)");
  const Manifold& m = q.domain.manifold;

  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (u[i] == 0.0) continue;
    double row = 0.0;
    for (int j = i + 1; j < n; ++j) {
      if (u[j] == 0.0) continue;
      row += q.weights[j] * u[j] * eval(k, distance(m, q.nodes[i], q.nodes[j]));
    }
    acc += 2.0 * q.weights[i] * u[i] * row;
  }
  CellAverageCache diag(k, m);
  for (int i = 0; i < n; ++i)
    acc += q.weights[i] * q.weights[i] * u[i] * u[i] * diag(q.weights[i]);
  return acc;
}

double spectral_norm(const OperatorMatrix& a) {
  const int n = a.size();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  double estimate = 0.0;
  for (int it = 0; it < 50'000; ++it) {
    Eigen::VectorXd av = a.entries * v;
    double next = av.norm();
    if (next == 0.0) return 0.0;
    v = av / next;
    if (std::abs(next - estimate) <= 1e-13 * next) return next;
    estimate = next;
  }
  return estimate;
}

JentschReport jentsch_check(const SpectralResult& r, double gap_tol,
                            double sign_tol) {
  JentschReport report;
  const int n = static_cast<int>(r.eigenvalues.size());
  double lambda1 = r.eigenvalues[0];
  report.lambda1_positive = lambda1 > 0.0;
  report.gap = n >= 2 ? std::abs(lambda1) - std::abs(r.eigenvalues[1])
                      : std::abs(lambda1);
  report.simple = report.gap > gap_tol * std::abs(lambda1);

  Eigen::VectorXd u1 = r.eigenvectors.col(0);
  Eigen::Index peak;
  u1.cwiseAbs().maxCoeff(&peak);
  if (u1[peak] < 0.0) u1 = -u1;
  report.eigenfunction_positive = u1.minCoeff() >= -sign_tol * u1[peak];
  return report;
}

}  // namespace geokern
