#include "geokern/rearrange.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geokern/spectral.hpp"

namespace geokern {

RearrangedPair rearrange(const Quadrature& q, const Eigen::VectorXd& u) {
  if (!q.equal_weights)
    throw std::invalid_argument(
        "rearrange: only equal-weight rules are supported; resample through "
        "region_rule first");
  if (q.size() < 1) throw std::invalid_argument("rearrange: empty rule");
  if (u.size() != q.size())
    throw std::invalid_argument("rearrange: value vector length mismatch");
  if ((u.array() < 0.0).any())
    throw std::invalid_argument("rearrange: values must be nonnegative");

  const Manifold& m = q.domain.manifold;
  const int n = q.size();
  const double total_mass = q.weights.sum();
  const double radius = radius_for_measure(m, total_mass);
  const Point center = canonical_center(m);

  Quadrature ball = stratified_ball_rule(m, center, radius, n);
  // Keep the per-node weight bitwise identical to the source rule.
  ball.weights = Eigen::VectorXd::Constant(n, q.weights[0]);

  // Ball nodes sorted by distance to the center (ascending, ties by index),
  // values sorted descending: the transport pairs the largest values with the
  // innermost nodes.
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) radii[i] = distance(m, center, ball.nodes[i]);
  std::vector<int> by_radius(n);
  std::iota(by_radius.begin(), by_radius.end(), 0);
  std::stable_sort(by_radius.begin(), by_radius.end(),
                   [&](int i, int j) { return radii[i] < radii[j]; });

  std::vector<double> sorted_values(u.data(), u.data() + n);
  std::sort(sorted_values.begin(), sorted_values.end(), std::greater<>());

  Eigen::VectorXd values(n);
  for (int rank = 0; rank < n; ++rank)
    values[by_radius[rank]] = sorted_values[rank];

  return RearrangedPair{std::move(ball), std::move(values)};
}

RieszSobolevReport riesz_sobolev_check(const Quadrature& q, const Kernel& k,
                                       const Eigen::VectorXd& u, double slack) {
  RearrangedPair pair = rearrange(q, u);
  RieszSobolevReport report;
  report.lhs = bilinear_form(q, k, u);
  report.rhs = bilinear_form(pair.ball_rule, k, pair.values);
  report.holds = report.rhs >= report.lhs * (1.0 - slack);
  return report;
}

}  // namespace geokern
