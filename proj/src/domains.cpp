#include "geokern/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace geokern {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ball(const Manifold& m, const GeodesicBall& b) {
  require_valid_point(m, b.center);
  if (!(b.radius > 0.0))
    throw std::invalid_argument("geodesic ball needs a positive radius");
  if (m.curvature == Curvature::Positive && b.radius > kPi)
    throw std::invalid_argument("ball radius exceeds pi on the sphere");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Boundary radius of a perturbed ball at angle theta.
double boundary_radius(const PerturbedBall& p, double theta) {
  return p.base_radius * (1.0 + p.amplitude * std::cos(p.mode * theta));
}

// Polar angle of x around `center` measured against the frame (e1, e2).
double polar_angle(const Manifold& m, const Point& center,
                   const std::vector<Eigen::VectorXd>& frame, const Point& x) {
  Eigen::VectorXd v = log_direction(m, center, x);
  double a = tangent_inner(m, v, frame[0]);
  double b = tangent_inner(m, v, frame[1]);
  return std::atan2(b, a);
}

}  // namespace

Domain Domain::ball(const Manifold& m, Point center, double radius) {
  GeodesicBall b{std::move(center), radius};
  check_ball(m, b);
  return Domain{m, std::move(b)};
}

Domain Domain::ball_at_origin(const Manifold& m, double radius) {
  return ball(m, canonical_center(m), radius);
}

Domain Domain::disjoint_balls(const Manifold& m,
                              std::vector<GeodesicBall> balls) {
  if (balls.empty())
    throw std::invalid_argument("disjoint_balls: need at least one ball");
  for (const auto& b : balls) check_ball(m, b);
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      double d = distance(m, balls[i].center, balls[j].center);
      if (!(d > balls[i].radius + balls[j].radius))
        throw std::invalid_argument(
            "disjoint_balls: balls " + std::to_string(i) + " and " +
            std::to_string(j) + " are not strictly disjoint");
    }
  return Domain{m, DisjointBalls{std::move(balls)}};
}

Domain Domain::two_identical_balls(const Manifold& m, double radius,
                                   double center_distance) {
  if (!(center_distance > 2.0 * radius))
    throw std::invalid_argument(
        "two_identical_balls: separation must exceed twice the radius");
  Point base = canonical_center(m);
  auto frame = tangent_frame(m, base);
  Point a = geodesic_point(m, base, frame[0], center_distance / 2.0);
  Point b = geodesic_point(m, base, -frame[0], center_distance / 2.0);
  return disjoint_balls(m, {GeodesicBall{std::move(a), radius},
                            GeodesicBall{std::move(b), radius}});
}

Domain Domain::perturbed_ball(const Manifold& m, Point center,
                              double base_radius, double amplitude, int mode) {
  if (m.dim != 2)
    throw std::invalid_argument("perturbed_ball is only defined for n = 2");
  if (!(base_radius > 0.0) || amplitude < 0.0 || amplitude >= 1.0)
    throw std::invalid_argument(
        "perturbed_ball: need base_radius > 0 and 0 <= amplitude < 1");
  if (mode < 1) throw std::invalid_argument("perturbed_ball: mode must be >= 1");
  if (m.curvature == Curvature::Positive &&
      base_radius * (1.0 + amplitude) >= kPi)
    throw std::invalid_argument(
        "perturbed_ball: boundary radius reaches the antipode");
  require_valid_point(m, center);
  return Domain{m, PerturbedBall{std::move(center), base_radius, amplitude, mode}};
}

Domain Domain::sampled(const Manifold& m, SampledRegion region) {
  check_ball(m, region.enclosing);
  if (!region.indicator)
    throw std::invalid_argument("sampled domain needs an indicator");
  return Domain{m, std::move(region)};
}

std::string Domain::describe() const {
  struct Describe {
    const Manifold& m;
    std::string operator()(const GeodesicBall& b) const {
      return "ball(r=" + fmt(b.radius) + ")";
    }
    std::string operator()(const DisjointBalls& db) const {
      std::string s = "disjoint_balls(k=" + std::to_string(db.balls.size());
      s += "; r=";
      for (std::size_t i = 0; i < db.balls.size(); ++i)
        s += (i ? "," : "") + fmt(db.balls[i].radius);
      s += "; sep=";
      bool first = true;
      for (std::size_t i = 0; i < db.balls.size(); ++i)
        for (std::size_t j = i + 1; j < db.balls.size(); ++j) {
          s += (first ? "" : ",") +
               fmt(distance(m, db.balls[i].center, db.balls[j].center));
          first = false;
        }
      return s + ")";
    }
    std::string operator()(const PerturbedBall& p) const {
      return "perturbed_ball(r=" + fmt(p.base_radius) +
             ", eps=" + fmt(p.amplitude) + ", k=" + std::to_string(p.mode) + ")";
    }
    std::string operator()(const SampledRegion& r) const {
      return "sampled_region(enclosing_r=" + fmt(r.enclosing.radius) + ")";
    }
  };
  return std::visit(Describe{manifold}, shape);
}

Domain parse_domain_spec(const Manifold& m, std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("domain spec must look like ball:r=0.8");
  std::string_view tag = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);

  std::map<std::string, double> params;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("domain spec: expected key=value, got '" +
                                  std::string(item) + "'");
    try {
      params[std::string(item.substr(0, eq))] =
          std::stod(std::string(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("domain spec: malformed number in '" +
                                  std::string(item) + "'");
    }
  }
  auto need = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument(std::string("domain spec: missing ") + key);
    return it->second;
  };

  if (tag == "ball") return Domain::ball_at_origin(m, need("r"));
  if (tag == "two-balls")
    return Domain::two_identical_balls(m, need("r"), need("l"));
  if (tag == "perturbed")
    return Domain::perturbed_ball(m, canonical_center(m), need("r"),
                                  need("eps"),
                                  static_cast<int>(std::lround(need("k"))));
  throw std::invalid_argument("unknown domain spec tag: " + std::string(tag));
}

bool indicator(const Domain& d, const Point& x) {
  require_valid_point(d.manifold, x);  // also rejects manifold mismatch
  const Manifold& m = d.manifold;
  struct Inside {
    const Manifold& m;
    const Point& x;
    bool operator()(const GeodesicBall& b) const {
      return distance(m, b.center, x) < b.radius;
    }
    bool operator()(const DisjointBalls& db) const {
      return std::any_of(db.balls.begin(), db.balls.end(),
                         [&](const GeodesicBall& b) {
                           return distance(m, b.center, x) < b.radius;
                         });
    }
    bool operator()(const PerturbedBall& p) const {
      double t = distance(m, p.center, x);
      double inner = p.base_radius * (1.0 - p.amplitude);
      double outer = p.base_radius * (1.0 + p.amplitude);
      if (t < inner) return true;
      if (t >= outer) return false;
      auto frame = tangent_frame(m, p.center);
      double theta = polar_angle(m, p.center, frame, x);
      return t < boundary_radius(p, theta);
    }
    bool operator()(const SampledRegion& r) const {
      if (distance(m, r.enclosing.center, x) >= r.enclosing.radius) return false;
      return r.indicator(x);
    }
  };
  return std::visit(Inside{m, x}, d.shape);
}

GeodesicBall enclosing_ball(const Domain& d) {
  const Manifold& m = d.manifold;
  struct Enclose {
    const Manifold& m;
    GeodesicBall operator()(const GeodesicBall& b) const { return b; }
    GeodesicBall operator()(const DisjointBalls& db) const {
      // A ball about the first center always works; cap at pi on the sphere.
      const Point& c = db.balls.front().center;
      double r = 0.0;
      for (const auto& b : db.balls)
        r = std::max(r, distance(m, c, b.center) + b.radius);
      r *= 1.0 + 1e-12;
      if (m.curvature == Curvature::Positive) r = std::min(r, kPi);
      return GeodesicBall{c, r};
    }
    GeodesicBall operator()(const PerturbedBall& p) const {
      return GeodesicBall{p.center, p.base_radius * (1.0 + p.amplitude)};
    }
    GeodesicBall operator()(const SampledRegion& r) const { return r.enclosing; }
  };
  return std::visit(Enclose{m}, d.shape);
}

Point sample_in_ball(const Manifold& m, const GeodesicBall& ball,
                     std::mt19937_64& rng) {
  check_ball(m, ball);
  auto frame = tangent_frame(m, ball.center);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double u = unit(rng);
  while (u == 0.0) u = unit(rng);
  double t = radius_for_measure(m, u * ball_volume(m, ball.radius));

  Eigen::VectorXd dir;
  switch (m.dim) {
    case 1:
      dir = (unit(rng) < 0.5) ? frame[0] : Eigen::VectorXd(-frame[0]);
      break;
    case 2: {
      double phi = 2.0 * kPi * unit(rng);
      dir = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
      break;
    }
    case 3: {
      double z = 2.0 * unit(rng) - 1.0;
      double phi = 2.0 * kPi * unit(rng);
      double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      dir = s * std::cos(phi) * frame[0] + s * std::sin(phi) * frame[1] +
            z * frame[2];
      break;
    }
    default:
      throw std::logic_error("sample_in_ball: unsupported dimension");
  }
  return geodesic_point(m, ball.center, dir, t);
}

MeasureEstimate measure_estimate(const Domain& d, long samples,
                                 std::uint64_t seed) {
  struct Measure {
    const Domain& d;
    long samples;
    std::uint64_t seed;
    MeasureEstimate operator()(const GeodesicBall& b) const {
      return {ball_volume(d.manifold, b.radius), 0, true};
    }
    MeasureEstimate operator()(const DisjointBalls& db) const {
      double total = 0.0;
      for (const auto& b : db.balls) total += ball_volume(d.manifold, b.radius);
      return {total, 0, true};
    }
    MeasureEstimate operator()(const PerturbedBall&) const {
      return monte_carlo();
    }
    MeasureEstimate operator()(const SampledRegion& r) const {
      if (r.measure_hint) return {*r.measure_hint, 0, false};
      return monte_carlo();
    }
    MeasureEstimate monte_carlo() const {
      if (samples < 1000)
        throw std::invalid_argument("measure_estimate: too few samples");
      GeodesicBall enc = enclosing_ball(d);
      std::mt19937_64 rng(seed);
      long hits = 0;
      for (long i = 0; i < samples; ++i)
        if (indicator(d, sample_in_ball(d.manifold, enc, rng))) ++hits;
      double ratio = static_cast<double>(hits) / static_cast<double>(samples);
      return {ratio * ball_volume(d.manifold, enc.radius), samples, false};
    }
  };
  return std::visit(Measure{d, samples, seed}, d.shape);
}

double measure(const Domain& d) { return measure_estimate(d).value; }

double perturbed_ball_measure_quadrature(const Manifold& m,
                                         const PerturbedBall& shape) {
  // area = integral over theta of V1(r(theta)), V1(r) = ball_volume / (2 pi);
  // the midpoint rule is spectrally accurate for this periodic integrand.
  const int n = 4096;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double theta = 2.0 * kPi * (j + 0.5) / n;
    acc += ball_volume(m, boundary_radius(shape, theta)) / (2.0 * kPi);
  }
  return acc * (2.0 * kPi / n);
}

namespace {

// Common radius rescaling: find s with sum_i ball_volume(s * rel_i) = target.
// Returns 0 on failure (radius cap reached on the sphere).
double solve_scale(const Manifold& m, const std::vector<double>& rel,
                   double target) {
  double cap = std::numeric_limits<double>::infinity();
  if (m.curvature == Curvature::Positive) {
    double max_rel = *std::max_element(rel.begin(), rel.end());
    cap = (kPi - 1e-9) / max_rel;
  }
  auto total = [&](double s) {
    double acc = 0.0;
    for (double r : rel) acc += ball_volume(m, s * r);
    return acc;
  };
  double hi = 0.25;
  while (total(hi) < target) {
    hi *= 2.0;
    if (hi > cap) {
      hi = cap;
      if (total(hi) < target) return 0.0;
      break;
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (total(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Domain random_disjoint_balls(const Manifold& m, int count, double target,
                             std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_domain: count >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rel_dist(0.6, 1.4);

  double r_target = radius_for_measure(m, target);
  GeodesicBall placement{canonical_center(m),
                         m.curvature == Curvature::Positive
                             ? kPi
                             : 2.0 * r_target + 1.0};

  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Point> centers;
    for (int i = 0; i < count; ++i)
      centers.push_back(sample_in_ball(m, placement, rng));
    std::vector<double> rel(count);
    for (auto& r : rel) r = rel_dist(rng);

    double s = solve_scale(m, rel, target);
    if (s <= 0.0) continue;

    bool ok = true;
    for (int i = 0; i < count && ok; ++i)
      for (int j = i + 1; j < count && ok; ++j)
        if (distance(m, centers[i], centers[j]) <=
            1.05 * s * (rel[i] + rel[j]))
          ok = false;
    if (!ok) continue;

    std::vector<GeodesicBall> balls;
    for (int i = 0; i < count; ++i)
      balls.push_back(GeodesicBall{std::move(centers[i]), s * rel[i]});
    return Domain::disjoint_balls(m, std::move(balls));
  }
  throw std::runtime_error(
      "random_domain: ball placement failed after bounded retries");
}

Domain random_perturbed_ball(const Manifold& m, double target,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eps_dist(0.12, 0.32);
  std::uniform_int_distribution<int> mode_dist(2, 5);

  for (int attempt = 0; attempt < 500; ++attempt) {
    double eps = eps_dist(rng);
    int mode = mode_dist(rng);
    double cap = m.curvature == Curvature::Positive
                     ? (kPi - 1e-9) / (1.0 + eps)
                     : std::numeric_limits<double>::infinity();
    auto area = [&](double base) {
      return perturbed_ball_measure_quadrature(
          m, PerturbedBall{canonical_center(m), base, eps, mode});
    };
    double hi = 0.25;
    bool feasible = true;
    while (area(hi) < target) {
      hi *= 2.0;
      if (hi > cap) {
        hi = cap;
        feasible = area(hi) >= target;
        break;
      }
    }
    if (!feasible) continue;
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (area(mid) < target ? lo : hi) = mid;
    }
    return Domain::perturbed_ball(m, canonical_center(m), 0.5 * (lo + hi), eps,
                                  mode);
  }
  throw std::runtime_error(
      "random_domain: perturbed-ball calibration failed after bounded retries");
}

}  // namespace

Domain random_domain(const Manifold& m, const DomainFamily& family,
                     double target_measure, std::uint64_t seed) {
  if (!(target_measure > 0.0))
    throw std::domain_error("random_domain: target measure must be positive");
  if (m.curvature == Curvature::Positive &&
      target_measure >= m.total_measure())
    throw std::domain_error("random_domain: target exceeds the sphere measure");
  switch (family.kind) {
    case DomainFamily::Kind::DisjointBalls:
      return random_disjoint_balls(m, family.ball_count, target_measure, seed);
    case DomainFamily::Kind::PerturbedBall:
      return random_perturbed_ball(m, target_measure, seed);
  }
  throw std::logic_error("random_domain: unknown family");
}

}  // namespace geokern
