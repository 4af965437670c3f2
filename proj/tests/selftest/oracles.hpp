#pragma once

// Brute-force reference computations backing the acceptance checks. These are
// deliberately slow and share no code with the library paths they validate:
// volumes and radial kernel integrals via graded midpoint panels, eigenvalues
// via inertia-count bisection on the characteristic polynomial sign changes.

#include <Eigen/Core>

#include <functional>
#include <stdexcept>

#include "geokern/geometry.hpp"

namespace geokern::selftest {

struct OracleConfig {
  long panel_count = 1'000'000;  // 1-D midpoint panels per refinement level
  double tolerance = 1e-8;       // relative, enforced via Richardson check

  void validate() const {
    if (panel_count < 1000)
      throw std::invalid_argument("OracleConfig: panel_count must be >= 1000");
  }
};

/// Thrown when the graded-panel sums keep growing under refinement, i.e. the
/// radial integral diverges at t = 0.
struct DivergenceReport : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// sigma_{n-1} * integral_0^r f(t) s(t)^{n-1} dt by midpoint panels on
/// geometrically graded blocks (grading factor 2 toward t = 0). Integrable
/// singularities at 0 are admitted; divergent ones raise DivergenceReport.
double radial_integral_oracle(const Manifold& m,
                              const std::function<double(double)>& f, double r,
                              const OracleConfig& config = {});

/// All eigenvalues (ascending) of a small dense symmetric matrix, located by
/// bisection on the inertia count of A - x*I. Independent of any library
/// eigensolver; n <= 6.
Eigen::VectorXd eigen_oracle(const Eigen::MatrixXd& a);

}  // namespace geokern::selftest
