#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "geokern/geometry.hpp"

namespace geokern {

struct RieszProfile {
  double alpha;  // K(rho) = rho^{-alpha}, 0 < alpha < n
};
struct ExponentialProfile {
  double beta;  // K(rho) = exp(-beta rho), beta > 0
};
struct ConstantProfile {
  double c;  // K(rho) = c > 0
};

/// A positive non-increasing radial kernel profile, tagged with the manifold
/// dimension it is admissible on (local integrability of the Riesz profile
/// needs alpha < n).
struct Kernel {
  std::variant<RieszProfile, ExponentialProfile, ConstantProfile> profile;
  int manifold_dim = 2;

  static Kernel riesz(double alpha, int dim);
  static Kernel exponential(double beta, int dim);
  static Kernel constant(double c, int dim);

  bool singular_at_zero() const {
    return std::holds_alternative<RieszProfile>(profile);
  }
  /// K(rho) -> 0 at infinity; required of kernels used in the second-eigenvalue
  /// (two-ball) experiments.
  bool decays_at_infinity() const {
    return !std::holds_alternative<ConstantProfile>(profile);
  }

  std::string spec_string() const;
};

/// Pointwise kernel value; rho = 0 with a Riesz profile raises a singularity
/// error (the matrix diagonal must go through cell_average instead).
double eval(const Kernel& k, double rho);

/// Mean of K over a geodesic ball cell of the given measure: the cell radius
/// solves ball_volume = cell_measure, and the radial integral uses a power
/// substitution that is exact for the Riesz profile, so the integrable
/// singularity costs no accuracy.
double cell_average(const Kernel& k, const Manifold& m, double cell_measure);

/// Parses "riesz:alpha=1.0", "exp:beta=1.0" or "const:c=1.0".
Kernel parse_kernel(std::string_view spec, int dim);

}  // namespace geokern
