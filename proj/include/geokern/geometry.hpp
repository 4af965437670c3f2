#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace geokern {

/// Sign of the constant sectional curvature of the model space.
enum class Curvature { Positive, Zero, Negative };

/// One of the three unit-curvature model spaces: the sphere S^n, Euclidean
/// space R^n, or real hyperbolic space H^n (hyperboloid model), n in {1,2,3}.
struct Manifold {
  Curvature curvature;
  int dim;

  static Manifold sphere(int dim) { return make(Curvature::Positive, dim); }
  static Manifold euclidean(int dim) { return make(Curvature::Zero, dim); }
  static Manifold hyperbolic(int dim) { return make(Curvature::Negative, dim); }

  /// Number of ambient coordinates a point carries: dim+1 for the sphere and
  /// the hyperboloid model, dim for Euclidean space.
  int ambient_dim() const {
    return curvature == Curvature::Zero ? dim : dim + 1;
  }

  /// Total Riemannian measure; finite only on the sphere.
  double total_measure() const;

  /// Largest radius a geodesic ball may have (pi on the sphere).
  double max_radius() const;

  std::string name() const;  // "sphere" | "euclidean" | "hyperbolic"

  bool operator==(const Manifold&) const = default;

 private:
  static Manifold make(Curvature c, int dim) {
    if (dim < 1 || dim > 3)
      throw std::invalid_argument("Manifold: dim must be 1, 2 or 3");
    return Manifold{c, dim};
  }
};

/// A point in the ambient model: a unit vector for S^n, a hyperboloid sheet
/// point (x0^2 - sum x_i^2 = 1, x0 >= 1) for H^n, plain coordinates for R^n.
struct Point {
  Eigen::VectorXd coords;
};

/// Unit (n-1)-sphere surface measure sigma_{n-1}: 2, 2*pi, 4*pi for n = 1,2,3.
double unit_sphere_measure(int n);

/// The warping function s(t): sin t, t, sinh t for positive, zero, negative
/// curvature; the area element of the geodesic sphere of radius t is
/// sigma_{n-1} s(t)^{n-1}.
double warp(const Manifold& m, double t);

/// The model's ambient bilinear form: the Euclidean dot product for S^n and
/// R^n, the Minkowski form x0*y0 - sum x_i*y_i for H^n.
double model_form(const Manifold& m, const Eigen::VectorXd& a,
                  const Eigen::VectorXd& b);

/// Riemannian inner product of tangent vectors (positive definite): the dot
/// product on S^n/R^n, minus the Minkowski form on H^n.
double tangent_inner(const Manifold& m, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b);

/// Initial unit velocity of the geodesic from `center` to x (the normalized
/// logarithm map); requires 0 < distance < injectivity radius.
Eigen::VectorXd log_direction(const Manifold& m, const Point& center,
                              const Point& x);

/// Residual of the model constraint at p (0 for valid points).
double point_constraint_residual(const Manifold& m, const Point& p);

/// Throws std::invalid_argument if p violates the model constraint by more
/// than tol (default matches the 1e-9 validity threshold for operations).
void require_valid_point(const Manifold& m, const Point& p, double tol = 1e-9);

/// Geodesic distance. Inner products are clamped to the admissible range
/// before acos/acosh so roundoff at nearly coincident or antipodal points
/// cannot produce NaN.
double distance(const Manifold& m, const Point& x, const Point& y);

/// The canonical base point: north pole (0,...,0,1) on S^n, hyperboloid apex
/// (1,0,...,0) on H^n, the origin on R^n.
Point canonical_center(const Manifold& m);

/// Point reached after geodesic time t from `center` with initial velocity
/// `direction`. The direction must be tangent at center (orthogonal in the
/// model's bilinear form) and of unit length in that form.
Point geodesic_point(const Manifold& m, const Point& center,
                     const Eigen::VectorXd& direction, double t);

/// An orthonormal basis of the tangent space at p (n vectors), built by
/// Gram-Schmidt in the model's bilinear form.
std::vector<Eigen::VectorXd> tangent_frame(const Manifold& m, const Point& p);

/// Riemannian measure of the geodesic ball of radius r, in closed form:
/// sigma_{n-1} * integral_0^r s(t)^{n-1} dt.
double ball_volume(const Manifold& m, double r);

/// Inverse of ball_volume: the radius whose ball has the target measure,
/// found by bisection to 1e-12 relative accuracy.
double radius_for_measure(const Manifold& m, double target);

}  // namespace geokern
