#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "geokern/domains.hpp"
#include "geokern/geometry.hpp"

namespace geokern {

/// Node/weight discretization of the Riemannian measure on a domain. Weights
/// are in measure units: sum(weights) approximates measure(domain).
struct Quadrature {
  std::vector<Point> nodes;
  Eigen::VectorXd weights;
  Domain domain;
  bool equal_weights = false;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre points and weights on (-1, 1), by Newton refinement of the
/// Legendre recurrence.
struct GaussRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int n);

/// Product polar rule on a geodesic ball: Gauss-Legendre in the radius with
/// the s(t)^{n-1} area factor, crossed with equal-weight angles (two
/// directions for n=1, uniform angles for n=2, Gauss polar x uniform azimuth
/// for n=3).
Quadrature ball_rule(const Manifold& m, const Point& center, double radius,
                     int radial_nodes, int angular_nodes);

/// Equal-weight rule by rejection sampling inside the enclosing ball:
/// `proposals` draws, keeping the points inside the domain, each kept point
/// weighted by enclosing-ball volume / proposals.
Quadrature region_rule(const Domain& d, long proposals, std::uint64_t seed);

/// region_rule sized by a pilot run so the kept node count lands near
/// `target_kept`; deterministic in the seed.
Quadrature region_rule_kept(const Domain& d, int target_kept,
                            std::uint64_t seed);

/// Deterministic equal-weight rule on a geodesic ball: radii stratified in
/// equal measure shells, low-discrepancy directions. Used as the rearrangement
/// target so the transport adds no sampling noise.
Quadrature stratified_ball_rule(const Manifold& m, const Point& center,
                                double radius, int count);

/// Sub-rule with the selected (node, weight) pairs unchanged; the domain
/// becomes a sampled-region wrapper carrying the kept mass as measure hint.
/// Throws std::runtime_error on an empty selection.
Quadrature restrict_rule(const Quadrature& q, const std::vector<bool>& keep);

/// Concatenation of rules over disjoint regions (ball + ball becomes a
/// disjoint-ball domain).
Quadrature union_rule(const Quadrature& a, const Quadrature& b);

}  // namespace geokern
