#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "geokern/rearrange.hpp"
#include "geokern/spectral.hpp"

using namespace geokern;

TEST_CASE("constants are fixed points of the rearrangement") {
  auto s2 = Manifold::sphere(2);
  Quadrature q = region_rule(Domain::ball_at_origin(s2, 0.7), 2'000, 3);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(q.size(), 1.25);
  RearrangedPair pair = rearrange(q, u);
  REQUIRE(pair.values.size() == q.size());
  for (int i = 0; i < pair.values.size(); ++i)
    CHECK(pair.values[i] == 1.25);
  CHECK(pair.ball_rule.equal_weights);
  CHECK(pair.ball_rule.weights[0] == q.weights[0]);
}

TEST_CASE("indicators rearrange to the innermost sub-ball") {
  auto h2 = Manifold::hyperbolic(2);
  Domain two = Domain::two_identical_balls(h2, 0.5, 1.8);
  Quadrature q = region_rule_kept(two, 1'500, 5);

  // mark one component: a sub-region of known node count
  const auto& balls = std::get<DisjointBalls>(two.shape).balls;
  Eigen::VectorXd u(q.size());
  int marked = 0;
  for (int i = 0; i < q.size(); ++i) {
    bool in_first = distance(h2, balls[0].center, q.nodes[i]) < balls[0].radius;
    u[i] = in_first ? 1.0 : 0.0;
    marked += in_first;
  }
  RearrangedPair pair = rearrange(q, u);

  Point center = canonical_center(h2);
  std::vector<int> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return distance(h2, center, pair.ball_rule.nodes[i]) <
           distance(h2, center, pair.ball_rule.nodes[j]);
  });
  for (int rank = 0; rank < q.size(); ++rank)
    CHECK(pair.values[order[rank]] == (rank < marked ? 1.0 : 0.0));
}

TEST_CASE("value multiset and weighted norms survive exactly") {
  auto e2 = Manifold::euclidean(2);
  Quadrature q = region_rule(Domain::ball_at_origin(e2, 1.0), 3'000, 11);
  Eigen::VectorXd u(q.size());
  for (int i = 0; i < q.size(); ++i)
    u[i] = std::abs(std::sin(0.37 * i)) + 0.01 * (i % 7);
  RearrangedPair pair = rearrange(q, u);

  std::vector<double> a(u.data(), u.data() + u.size());
  std::vector<double> b(pair.values.data(), pair.values.data() + u.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);  // bitwise multiset equality, hence exact norm preservation

  // radii non-increasing profile
  Point center = canonical_center(e2);
  std::vector<std::pair<double, double>> radius_value;
  for (int i = 0; i < q.size(); ++i)
    radius_value.emplace_back(distance(e2, center, pair.ball_rule.nodes[i]),
                              pair.values[i]);
  std::stable_sort(radius_value.begin(), radius_value.end(),
                   [](auto& x, auto& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < radius_value.size(); ++i)
    CHECK(radius_value[i].second <= radius_value[i - 1].second);

  // equimeasurability: threshold counts agree for every cut
  for (double t : {0.1, 0.4, 0.7, 0.95}) {
    auto above = [t](double v) { return v > t; };
    CHECK(std::count_if(a.begin(), a.end(), above) ==
          std::count_if(b.begin(), b.end(), above));
  }
}

TEST_CASE("rearrange rejects unsupported inputs") {
  auto s2 = Manifold::sphere(2);
  Quadrature ball = ball_rule(s2, canonical_center(s2), 0.8, 8, 16);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(ball.size());
  CHECK_THROWS_AS(rearrange(ball, u), std::invalid_argument);  // unequal weights

  Quadrature q = region_rule(Domain::ball_at_origin(s2, 0.8), 500, 2);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(q.size());
  bad[3] = -0.2;
  CHECK_THROWS_AS(rearrange(q, bad), std::invalid_argument);
  CHECK_THROWS_AS(rearrange(q, Eigen::VectorXd::Ones(q.size() + 1)),
                  std::invalid_argument);
}

TEST_CASE("riesz-sobolev comparison on eigenfunctions and fixed points") {
  auto s2 = Manifold::sphere(2);
  Kernel k = Kernel::riesz(1.0, 2);

  // first eigenfunction of a random two-ball domain: the inequality holds
  Domain two = random_domain(s2, DomainFamily::disjoint_balls(2), 1.2, 19);
  Quadrature q = region_rule_kept(two, 1'200, 7);
  SpectralResult r = eigensolve(assemble(q, k));
  Eigen::VectorXd u1 = r.eigenvectors.col(0);
  Eigen::Index peak;
  u1.cwiseAbs().maxCoeff(&peak);
  if (u1[peak] < 0) u1 = -u1;
  Eigen::VectorXd u = (u1.array() / q.weights.array().sqrt()).cwiseMax(0.0);
  RieszSobolevReport rep = riesz_sobolev_check(q, k, u, 0.02);
  CHECK(rep.holds);
  CHECK(rep.rhs > rep.lhs);  // strict gain when the domain is not a ball

  // radial non-increasing data on a ball is a fixed point up to transport
  Domain ball = Domain::ball_at_origin(s2, 0.8);
  Quadrature qb = region_rule_kept(ball, 2'000, 23);
  Point c = canonical_center(s2);
  Eigen::VectorXd radial(qb.size());
  for (int i = 0; i < qb.size(); ++i) {
    double d = distance(s2, c, qb.nodes[i]);
    radial[i] = std::exp(-2.0 * d * d);
  }
  RieszSobolevReport fix = riesz_sobolev_check(qb, k, radial, 0.02);
  CHECK(fix.holds);
  CHECK(std::abs(fix.rhs - fix.lhs) <= 0.02 * fix.lhs);

  // the zero function is trivially fixed
  RieszSobolevReport zero =
      riesz_sobolev_check(qb, k, Eigen::VectorXd::Zero(qb.size()), 0.02);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.holds);
}
