#include "geokern/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geokern {

namespace {

constexpr double kPi = std::numbers::pi;

// Kronecker sequence generators: the golden ratio conjugate for 1-D angle
// streams and the plastic-number pair for (polar, azimuth) on the 2-sphere.
constexpr double kGolden = 0.6180339887498949;
constexpr double kPlastic1 = 0.7548776662466927;
constexpr double kPlastic2 = 0.5698402909980532;

double fract(double x) { return x - std::floor(x); }

double splitmix_unit(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Low-discrepancy proposal stream in a geodesic ball: radii stratified in
// equal measure shells, directions from rotated Kronecker sequences. Nodes
// keep cell-diameter separation, which an iid stream does not: with a
// singular kernel, iid close pairs put O(1) spikes into the Nystrom spectrum
// that never vanish under refinement. The seed enters as a rotation of the
// whole point set, so distinct seeds give distinct unbiased rules while one
// seed is fully reproducible.
class BallProposals {
 public:
  BallProposals(const Manifold& m, const GeodesicBall& ball, long count,
                std::uint64_t seed)
      : m_(m),
        ball_(ball),
        count_(count),
        frame_(tangent_frame(m, ball.center)),
        volume_(ball_volume(m, ball.radius)) {
    std::uint64_t state = seed;
    shift_u_ = splitmix_unit(state);
    shift_a_ = splitmix_unit(state);
    shift_b_ = splitmix_unit(state);
  }

  Point at(long i) const {
    double u = fract((static_cast<double>(i) + 0.5) / count_ + shift_u_);
    switch (m_.dim) {
      case 1: {
        double xi = (2.0 * u - 1.0) * ball_.radius;
        const Eigen::VectorXd dir = xi < 0 ? (-frame_[0]).eval() : frame_[0];
        return geodesic_point(m_, ball_.center, dir, std::abs(xi));
      }
      case 2: {
        double t = radius_from_unit(u);
        double phi = 2.0 * kPi * fract(i * kGolden + shift_a_);
        return geodesic_point(
            m_, ball_.center,
            std::cos(phi) * frame_[0] + std::sin(phi) * frame_[1], t);
      }
      default: {
        double t = radius_from_unit(u);
        double z = 2.0 * fract(i * kPlastic1 + shift_a_) - 1.0;
        double phi = 2.0 * kPi * fract(i * kPlastic2 + shift_b_);
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return geodesic_point(m_, ball_.center,
                              s * std::cos(phi) * frame_[0] +
                                  s * std::sin(phi) * frame_[1] +
                                  z * frame_[2],
                              t);
      }
    }
  }

 private:
  double radius_from_unit(double u) const {
    return radius_for_measure(m_, std::max(u, 1e-12) * volume_);
  }

  Manifold m_;
  GeodesicBall ball_;
  long count_;
  std::vector<Eigen::VectorXd> frame_;
  double volume_;
  double shift_u_ = 0.0, shift_a_ = 0.0, shift_b_ = 0.0;
};

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
  GaussRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Tricomi initial guess for the k-th root of P_n.
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[k] = -x;
    rule.weights[k] = w;
    rule.points[n - 1 - k] = x;
    rule.weights[n - 1 - k] = w;
  }
  return rule;
}

Quadrature ball_rule(const Manifold& m, const Point& center, double radius,
                     int radial_nodes, int angular_nodes) {
  require_valid_point(m, center);
  if (!(radius > 0.0))
    throw std::domain_error("ball_rule: radius must be positive");
  if (m.curvature == Curvature::Positive && radius > kPi)
    throw std::domain_error("ball_rule: radius exceeds pi on the sphere");
  if (radial_nodes < 4)
    throw std::invalid_argument("ball_rule: need at least 4 radial nodes");
  if (m.dim >= 2 && angular_nodes < 4)
    throw std::invalid_argument("ball_rule: need at least 4 angular nodes");

  auto frame = tangent_frame(m, center);
  GaussRule radial = gauss_legendre(radial_nodes);

  // Angular directions with weights summing to sigma_{n-1}.
  std::vector<Eigen::VectorXd> dirs;
  std::vector<double> dir_weights;
  switch (m.dim) {
    case 1:
      dirs = {frame[0], -frame[0]};
      dir_weights = {1.0, 1.0};
      break;
    case 2:
      for (int j = 0; j < angular_nodes; ++j) {
        double phi = 2.0 * kPi * (j + 0.5) / angular_nodes;
        dirs.push_back(std::cos(phi) * frame[0] + std::sin(phi) * frame[1]);
        dir_weights.push_back(2.0 * kPi / angular_nodes);
      }
      break;
    case 3: {
      int polar = std::max(2, angular_nodes / 2);
      GaussRule pg = gauss_legendre(polar);
      for (int p = 0; p < polar; ++p) {
        double z = pg.points[p];
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < angular_nodes; ++j) {
          double phi = 2.0 * kPi * (j + 0.5) / angular_nodes;
          dirs.push_back(s * std::cos(phi) * frame[0] +
                         s * std::sin(phi) * frame[1] + z * frame[2]);
          dir_weights.push_back(pg.weights[p] * 2.0 * kPi / angular_nodes);
        }
      }
      break;
    }
  }

  Quadrature q{{}, Eigen::VectorXd(radial_nodes * static_cast<int>(dirs.size())),
               Domain::ball(m, center, radius), false};
  int idx = 0;
  for (int k = 0; k < radial_nodes; ++k) {
    double t = 0.5 * radius * (radial.points[k] + 1.0);
    double gw = 0.5 * radius * radial.weights[k] *
                std::pow(warp(m, t), m.dim - 1);
    for (std::size_t a = 0; a < dirs.size(); ++a) {
      q.nodes.push_back(geodesic_point(m, center, dirs[a], t));
      q.weights[idx++] = gw * dir_weights[a];
    }
  }
  return q;
}

Quadrature region_rule(const Domain& d, long proposals, std::uint64_t seed) {
  if (proposals < 100)
    throw std::invalid_argument("region_rule: need at least 100 proposals");
  GeodesicBall enc = enclosing_ball(d);
  const double enc_volume = ball_volume(d.manifold, enc.radius);
  BallProposals stream(d.manifold, enc, proposals, seed);

  std::vector<Point> kept;
  for (long i = 0; i < proposals; ++i) {
    Point p = stream.at(i);
    if (indicator(d, p)) kept.push_back(std::move(p));
  }
  double acceptance =
      static_cast<double>(kept.size()) / static_cast<double>(proposals);
  if (acceptance < 1e-3)
    throw std::runtime_error(
        "region_rule: degenerate domain, acceptance ratio below 1e-3");

  Quadrature q{std::move(kept), Eigen::VectorXd(), d, true};
  q.weights = Eigen::VectorXd::Constant(
      q.size(), enc_volume / static_cast<double>(proposals));
  return q;
}

Quadrature region_rule_kept(const Domain& d, int target_kept,
                            std::uint64_t seed) {
  if (target_kept < 100)
    throw std::invalid_argument("region_rule_kept: need at least 100 nodes");
  Quadrature pilot = region_rule(d, 4000, seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  double acceptance = pilot.size() / 4000.0;
  long proposals =
      static_cast<long>(std::ceil(static_cast<double>(target_kept) / acceptance));
  return region_rule(d, std::max<long>(proposals, 100), seed);
}

Quadrature stratified_ball_rule(const Manifold& m, const Point& center,
                                double radius, int count) {
  if (count < 1) throw std::invalid_argument("stratified_ball_rule: count >= 1");
  require_valid_point(m, center);
  auto frame = tangent_frame(m, center);
  const double volume = ball_volume(m, radius);

  Quadrature q{{}, Eigen::VectorXd::Constant(count, volume / count),
               Domain::ball(m, center, radius), true};

  if (m.dim == 1) {
    // The "ball" is the interval (-r, r); march across it in equal steps.
    for (int i = 0; i < count; ++i) {
      double x = -radius + (i + 0.5) * 2.0 * radius / count;
      Eigen::VectorXd dir = x < 0 ? Eigen::VectorXd(-frame[0]) : frame[0];
      q.nodes.push_back(geodesic_point(m, center, dir, std::abs(x)));
    }
    return q;
  }

  for (int i = 0; i < count; ++i) {
    double u = (i + 0.5) / count;  // equal measure shells
    double t = radius_for_measure(m, u * volume);
    Eigen::VectorXd dir;
    if (m.dim == 2) {
      double phi = 2.0 * kPi * fract(i * kGolden);  // sunflower layout
      dir = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
    } else {
      double z = 2.0 * fract(i * kPlastic1) - 1.0;
      double phi = 2.0 * kPi * fract(i * kPlastic2);
      double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      dir = s * std::cos(phi) * frame[0] + s * std::sin(phi) * frame[1] +
            z * frame[2];
    }
    q.nodes.push_back(geodesic_point(m, center, dir, t));
  }
  return q;
}

Quadrature restrict_rule(const Quadrature& q, const std::vector<bool>& keep) {
  if (static_cast<int>(keep.size()) != q.size())
    throw std::invalid_argument("restrict_rule: mask length mismatch");
  int kept = 0;
  for (bool k : keep) kept += k;
  if (kept == 0)
    throw std::runtime_error("restrict_rule: empty node selection");

  Quadrature out{{}, Eigen::VectorXd(kept), q.domain, q.equal_weights};
  int idx = 0;
  double mass = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (!keep[i]) continue;
    out.nodes.push_back(q.nodes[i]);
    out.weights[idx++] = q.weights[i];
    mass += q.weights[i];
  }

  Domain parent = q.domain;
  SampledRegion wrapper{
      [parent](const Point& p) { return indicator(parent, p); },
      enclosing_ball(q.domain), mass};
  out.domain = Domain::sampled(q.domain.manifold, std::move(wrapper));
  return out;
}

Quadrature union_rule(const Quadrature& a, const Quadrature& b) {
  if (!(a.domain.manifold == b.domain.manifold))
    throw std::invalid_argument("union_rule: manifold mismatch");
  const Manifold& m = a.domain.manifold;

  Quadrature out{a.nodes, Eigen::VectorXd(a.size() + b.size()), a.domain,
                 false};
  out.nodes.insert(out.nodes.end(), b.nodes.begin(), b.nodes.end());
  out.weights << a.weights, b.weights;
  out.equal_weights =
      a.equal_weights && b.equal_weights && a.size() > 0 && b.size() > 0 &&
      std::abs(a.weights[0] - b.weights[0]) <= 0.0;

  const auto* ball_a = std::get_if<GeodesicBall>(&a.domain.shape);
  const auto* ball_b = std::get_if<GeodesicBall>(&b.domain.shape);
  if (ball_a && ball_b) {
    out.domain = Domain::disjoint_balls(m, {*ball_a, *ball_b});
    return out;
  }

  GeodesicBall ea = enclosing_ball(a.domain), eb = enclosing_ball(b.domain);
  double radius = std::max(ea.radius, distance(m, ea.center, eb.center) +
                                          eb.radius) *
                  (1.0 + 1e-12);
  if (m.curvature == Curvature::Positive) radius = std::min(radius, kPi);
  Domain da = a.domain, db = b.domain;
  SampledRegion merged{
      [da, db](const Point& p) { return indicator(da, p) || indicator(db, p); },
      GeodesicBall{ea.center, radius}, std::nullopt};
  out.domain = Domain::sampled(m, std::move(merged));
  return out;
}

}  // namespace geokern
