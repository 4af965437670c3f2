#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "geokern/geometry.hpp"

namespace geokern {

struct GeodesicBall {
  Point center;
  double radius = 0.0;
};

struct DisjointBalls {
  std::vector<GeodesicBall> balls;
};

/// Star-shaped perturbation of a ball, n = 2 only: boundary radius
/// r(theta) = base_radius * (1 + amplitude * cos(mode * theta)).
struct PerturbedBall {
  Point center;
  double base_radius = 0.0;
  double amplitude = 0.0;
  int mode = 2;
};

/// A region known only through a membership predicate plus a geodesic ball
/// guaranteed to contain it. `measure_hint` carries a externally computed
/// measure (set by quadrature restriction) so it is not re-estimated.
struct SampledRegion {
  std::function<bool(const Point&)> indicator;
  GeodesicBall enclosing;
  std::optional<double> measure_hint;
};

using Shape = std::variant<GeodesicBall, DisjointBalls, PerturbedBall, SampledRegion>;

/// An open bounded region of a model space. Construct through the factories,
/// which enforce the shape invariants (strict disjointness, amplitude < 1,
/// boundary staying inside the injectivity range on the sphere).
struct Domain {
  Manifold manifold;
  Shape shape;

  static Domain ball(const Manifold& m, Point center, double radius);
  static Domain ball_at_origin(const Manifold& m, double radius);
  static Domain disjoint_balls(const Manifold& m, std::vector<GeodesicBall> balls);
  /// Two identical balls with centers at geodesic distance `center_distance`,
  /// placed symmetrically along the first frame direction at the canonical
  /// center.
  static Domain two_identical_balls(const Manifold& m, double radius,
                                    double center_distance);
  static Domain perturbed_ball(const Manifold& m, Point center,
                               double base_radius, double amplitude, int mode);
  static Domain sampled(const Manifold& m, SampledRegion region);

  /// Short structured text record (shape tag + numeric parameters) used in
  /// experiment reports.
  std::string describe() const;
};

/// Parses the CLI domain grammar: "ball:r=0.8", "two-balls:r=0.6,l=2.0" (l is
/// the center distance) or "perturbed:r=0.8,eps=0.2,k=3"; shapes are placed at
/// the canonical center.
Domain parse_domain_spec(const Manifold& m, std::string_view spec);

/// True iff x lies in the open set; boundary points are outside.
bool indicator(const Domain& d, const Point& x);

/// A geodesic ball containing the domain.
GeodesicBall enclosing_ball(const Domain& d);

struct MeasureEstimate {
  double value = 0.0;
  long samples = 0;  // 0 when the value is a closed form (or a carried hint)
  bool exact = false;
};

/// Riemannian measure. Balls and disjoint unions are closed-form; perturbed
/// balls and sampled regions are Monte Carlo hit-ratio estimates against the
/// enclosing ball volume, with the sample count reported.
MeasureEstimate measure_estimate(const Domain& d, long samples = 200'000,
                                 std::uint64_t seed = 0x9e3779b97f4a7c15ULL);
double measure(const Domain& d);

/// Deterministic reference measure of a perturbed ball via the closed-form
/// radial volume integrated over the boundary angle; used to calibrate
/// generated domains to a target measure.
double perturbed_ball_measure_quadrature(const Manifold& m,
                                         const PerturbedBall& shape);

/// Domain families for randomized sweeps.
struct DomainFamily {
  enum class Kind { DisjointBalls, PerturbedBall };
  Kind kind = Kind::DisjointBalls;
  int ball_count = 2;

  static DomainFamily disjoint_balls(int count) {
    return DomainFamily{Kind::DisjointBalls, count};
  }
  static DomainFamily perturbed_ball() {
    return DomainFamily{Kind::PerturbedBall, 0};
  }
};

/// Seed-deterministic random domain of the given family whose measure is
/// within 0.5% of `target_measure` (the generators calibrate by 1-D
/// root-finding after random placement).
Domain random_domain(const Manifold& m, const DomainFamily& family,
                     double target_measure, std::uint64_t seed);

/// A point uniform w.r.t. the Riemannian measure of the geodesic ball, drawn
/// by inverse-CDF radial sampling and a uniform tangent direction.
Point sample_in_ball(const Manifold& m, const GeodesicBall& ball,
                     std::mt19937_64& rng);

}  // namespace geokern
