#include "geokern/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace geokern {

namespace {

constexpr double kPi = std::numbers::pi;

// Euclidean dot product of the ambient coordinates.
double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(b);
}

// Minkowski form x0*y0 - sum_{i>=1} x_i*y_i used by the hyperboloid model.
double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double q = a[0] * b[0];
  for (Eigen::Index i = 1; i < a.size(); ++i) q -= a[i] * b[i];
  return q;
}

void require_coord_size(const Manifold& m, const Point& p) {
  if (p.coords.size() != m.ambient_dim())
    throw std::invalid_argument("point has " + std::to_string(p.coords.size()) +
                                " coordinates, manifold expects " +
                                std::to_string(m.ambient_dim()));
}

}  // namespace

double Manifold::total_measure() const {
  if (curvature != Curvature::Positive)
    return std::numeric_limits<double>::infinity();
  return ball_volume(*this, kPi);
}

double Manifold::max_radius() const {
  return curvature == Curvature::Positive
             ? kPi
             : std::numeric_limits<double>::infinity();
}

std::string Manifold::name() const {
  switch (curvature) {
    case Curvature::Positive: return "sphere";
    case Curvature::Zero: return "euclidean";
    case Curvature::Negative: return "hyperbolic";
  }
  return "?";
}

double unit_sphere_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default:
      throw std::invalid_argument("unit_sphere_measure: n must be 1, 2 or 3");
  }
}

double warp(const Manifold& m, double t) {
  switch (m.curvature) {
    case Curvature::Positive: return std::sin(t);
    case Curvature::Zero: return t;
    case Curvature::Negative: return std::sinh(t);
  }
  return 0.0;
}

double model_form(const Manifold& m, const Eigen::VectorXd& a,
                  const Eigen::VectorXd& b) {
  return m.curvature == Curvature::Negative ? minkowski(a, b) : dot(a, b);
}

double tangent_inner(const Manifold& m, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b) {
  return m.curvature == Curvature::Negative ? -minkowski(a, b) : dot(a, b);
}

Eigen::VectorXd log_direction(const Manifold& m, const Point& center,
                              const Point& x) {
  double t = distance(m, center, x);
  switch (m.curvature) {
    case Curvature::Positive: {
      if (t < 1e-14 || t > kPi - 1e-14)
        throw std::domain_error("log_direction: point at or beyond the cut locus");
      return (x.coords - std::cos(t) * center.coords) / std::sin(t);
    }
    case Curvature::Negative: {
      if (t < 1e-14)
        throw std::domain_error("log_direction: coincident points");
      return (x.coords - std::cosh(t) * center.coords) / std::sinh(t);
    }
    case Curvature::Zero: {
      if (t < 1e-14)
        throw std::domain_error("log_direction: coincident points");
      return (x.coords - center.coords) / t;
    }
  }
  throw std::logic_error("log_direction: unreachable");
}

double point_constraint_residual(const Manifold& m, const Point& p) {
  require_coord_size(m, p);
  switch (m.curvature) {
    case Curvature::Positive:
      return std::abs(dot(p.coords, p.coords) - 1.0);
    case Curvature::Negative: {
      // the Minkowski form cancels terms of size x0^2, so the residual is
      // meaningful only relative to that scale (coords grow like cosh of the
      // distance from the apex)
      double q = minkowski(p.coords, p.coords);
      double scale = std::max(1.0, p.coords[0] * p.coords[0]);
      double r = std::abs(q - 1.0) / scale;
      if (p.coords[0] < 1.0) r = std::max(r, 1.0 - p.coords[0]);
      return r;
    }
    case Curvature::Zero:
      return 0.0;
  }
  return 0.0;
}

void require_valid_point(const Manifold& m, const Point& p, double tol) {
  if (point_constraint_residual(m, p) > tol)
    throw std::invalid_argument("point violates the " + m.name() +
                                " model constraint");
}

double distance(const Manifold& m, const Point& x, const Point& y) {
  require_valid_point(m, x);
  require_valid_point(m, y);
  switch (m.curvature) {
    case Curvature::Positive: {
      double c = std::clamp(dot(x.coords, y.coords), -1.0, 1.0);
      return std::acos(c);
    }
    case Curvature::Negative: {
      double c = std::max(minkowski(x.coords, y.coords), 1.0);
      return std::acosh(c);
    }
    case Curvature::Zero:
      return (x.coords - y.coords).norm();
  }
  return 0.0;
}

Point canonical_center(const Manifold& m) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m.ambient_dim());
  if (m.curvature == Curvature::Positive)
    c[m.dim] = 1.0;  // north pole
  else if (m.curvature == Curvature::Negative)
    c[0] = 1.0;  // hyperboloid apex
  return Point{std::move(c)};
}

Point geodesic_point(const Manifold& m, const Point& center,
                     const Eigen::VectorXd& direction, double t) {
  require_valid_point(m, center);
  if (direction.size() != m.ambient_dim())
    throw std::invalid_argument("direction dimension mismatch");
  constexpr double tol = 1e-8;
  switch (m.curvature) {
    case Curvature::Positive: {
      if (std::abs(dot(center.coords, direction)) > tol ||
          std::abs(dot(direction, direction) - 1.0) > tol)
        throw std::invalid_argument(
            "direction must be a unit tangent at center");
      return Point{std::cos(t) * center.coords + std::sin(t) * direction};
    }
    case Curvature::Negative: {
      // Tangent vectors satisfy <c,v>_M = 0 and have squared Minkowski
      // length -1; the induced metric is -Q on the tangent space. The checks
      // are relative to the coordinate scale (see point_constraint_residual).
      double scale = std::max(1.0, center.coords.norm() * direction.norm());
      if (std::abs(minkowski(center.coords, direction)) > tol * scale ||
          std::abs(minkowski(direction, direction) + 1.0) >
              tol * std::max(1.0, direction.squaredNorm()))
        throw std::invalid_argument(
            "direction must be a unit tangent at center");
      return Point{std::cosh(t) * center.coords + std::sinh(t) * direction};
    }
    case Curvature::Zero: {
      if (std::abs(dot(direction, direction) - 1.0) > tol)
        throw std::invalid_argument("direction must have unit length");
      return Point{center.coords + t * direction};
    }
  }
  return center;
}

std::vector<Eigen::VectorXd> tangent_frame(const Manifold& m, const Point& p) {
  require_valid_point(m, p);
  const int ad = m.ambient_dim();

  if (m.curvature == Curvature::Zero) {
    std::vector<Eigen::VectorXd> frame;
    for (int i = 0; i < m.dim; ++i)
      frame.push_back(Eigen::VectorXd::Unit(ad, i));
    return frame;
  }

  const bool spherical = m.curvature == Curvature::Positive;
  auto form = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return spherical ? dot(a, b) : -minkowski(a, b);
  };
  auto project_tangent = [&](const Eigen::VectorXd& e) -> Eigen::VectorXd {
    // Remove the component along p so that <p,v> vanishes in the model form.
    if (spherical) return e - dot(p.coords, e) * p.coords;
    return e - minkowski(p.coords, e) * p.coords;
  };

  std::vector<Eigen::VectorXd> frame;
  for (int i = 0; i < ad && static_cast<int>(frame.size()) < m.dim; ++i) {
    Eigen::VectorXd v = project_tangent(Eigen::VectorXd::Unit(ad, i));
    for (const auto& u : frame) v -= form(u, v) * u;
    double len2 = form(v, v);
    if (len2 < 1e-12) continue;  // candidate parallel to p or prior vectors
    frame.push_back(v / std::sqrt(len2));
  }
  if (static_cast<int>(frame.size()) != m.dim)
    throw std::runtime_error("tangent_frame: Gram-Schmidt failed");
  return frame;
}

double ball_volume(const Manifold& m, double r) {
  if (r < 0.0) throw std::domain_error("ball_volume: negative radius");
  if (m.curvature == Curvature::Positive && r > kPi + 1e-12)
    throw std::domain_error("ball_volume: radius exceeds pi on the sphere");
  if (m.curvature == Curvature::Positive) r = std::min(r, kPi);

  switch (m.dim) {
    case 1:
      return 2.0 * r;
    case 2:
      switch (m.curvature) {
        case Curvature::Positive: return 2.0 * kPi * (1.0 - std::cos(r));
        case Curvature::Zero: return kPi * r * r;
        case Curvature::Negative: return 2.0 * kPi * (std::cosh(r) - 1.0);
      }
      break;
    case 3:
      switch (m.curvature) {
        case Curvature::Positive:
          return kPi * (2.0 * r - std::sin(2.0 * r));
        case Curvature::Zero:
          return 4.0 * kPi * r * r * r / 3.0;
        case Curvature::Negative:
          return kPi * (std::sinh(2.0 * r) - 2.0 * r);
      }
      break;
  }
  throw std::logic_error("ball_volume: unreachable");
}

double radius_for_measure(const Manifold& m, double target) {
  if (!(target > 0.0))
    throw std::domain_error("radius_for_measure: target must be positive");
  double hi;
  if (m.curvature == Curvature::Positive) {
    double total = m.total_measure();
    if (target > total * (1.0 + 1e-12))
      throw std::domain_error(
          "radius_for_measure: target exceeds the sphere's total measure");
    if (target >= total) return kPi;
    hi = kPi;
  } else {
    hi = 1.0;
    while (ball_volume(m, hi) < target) hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (ball_volume(m, mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  double r = 0.5 * (lo + hi);
  return r;
}

}  // namespace geokern
