#pragma once

#include <Eigen/Core>

#include "geokern/kernels.hpp"
#include "geokern/quadrature.hpp"

namespace geokern {

/// Discrete symmetric-decreasing rearrangement of node values: an equal-weight
/// rule on the centred geodesic ball of matching measure, with the value
/// multiset transported so values are non-increasing in the node radius.
struct RearrangedPair {
  Quadrature ball_rule;    // equal-weight rule on the centred ball
  Eigen::VectorXd values;  // non-increasing along sorted node radii
};

/// Rearranges a nonnegative node-value vector from an equal-weight rule onto
/// the centred ball of measure sum(weights). Same node count and per-node
/// weight, so weighted sums of any function of the values (in particular the
/// L2 norm) are preserved exactly.
RearrangedPair rearrange(const Quadrature& q, const Eigen::VectorXd& u);

struct RieszSobolevReport {
  double lhs = 0.0;  // bilinear form on the original rule
  double rhs = 0.0;  // bilinear form on the rearranged pair
  bool holds = false;
};

/// Compares the kernel bilinear form before and after rearrangement;
/// holds iff rhs >= lhs * (1 - slack), the slack absorbing transport and
/// quadrature error.
RieszSobolevReport riesz_sobolev_check(const Quadrature& q, const Kernel& k,
                                       const Eigen::VectorXd& u, double slack);

}  // namespace geokern
