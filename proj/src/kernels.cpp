#include "geokern/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "geokern/quadrature.hpp"

namespace geokern {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

Kernel Kernel::riesz(double alpha, int dim) {
  if (!(alpha > 0.0) || !(alpha < dim))
    throw std::domain_error(
        "riesz kernel requires 0 < alpha < n for local integrability");
  return Kernel{RieszProfile{alpha}, dim};
}

Kernel Kernel::exponential(double beta, int dim) {
  if (!(beta > 0.0))
    throw std::domain_error("exponential kernel requires beta > 0");
  return Kernel{ExponentialProfile{beta}, dim};
}

Kernel Kernel::constant(double c, int dim) {
  if (!(c > 0.0)) throw std::domain_error("constant kernel requires c > 0");
  return Kernel{ConstantProfile{c}, dim};
}

std::string Kernel::spec_string() const {
  struct Spec {
    std::string operator()(const RieszProfile& p) const {
      return "riesz:alpha=" + fmt(p.alpha);
    }
    std::string operator()(const ExponentialProfile& p) const {
      return "exp:beta=" + fmt(p.beta);
    }
    std::string operator()(const ConstantProfile& p) const {
      return "const:c=" + fmt(p.c);
    }
  };
  return std::visit(Spec{}, profile);
}

double eval(const Kernel& k, double rho) {
  if (rho < 0.0) throw std::domain_error("eval: negative distance");
  struct Eval {
    double rho;
    double operator()(const RieszProfile& p) const {
      if (rho == 0.0)
        throw std::domain_error(
            "riesz kernel is singular at rho = 0; use cell_average");
      if (p.alpha == 1.0) return 1.0 / rho;  // common exponents, cheap paths
      if (p.alpha == 0.5) return 1.0 / std::sqrt(rho);
      if (p.alpha == 2.0) return 1.0 / (rho * rho);
      return std::pow(rho, -p.alpha);
    }
    double operator()(const ExponentialProfile& p) const {
      return std::exp(-p.beta * rho);
    }
    double operator()(const ConstantProfile& p) const { return p.c; }
  };
  return std::visit(Eval{rho}, k.profile);
}

double cell_average(const Kernel& k, const Manifold& m, double cell_measure) {
  if (!(cell_measure > 0.0))
    throw std::domain_error("cell_average: cell measure must be positive");
  if (const auto* riesz = std::get_if<RieszProfile>(&k.profile);
      riesz && riesz->alpha >= m.dim)
    throw std::domain_error("cell_average: riesz exponent not admissible");
  if (const auto* constant = std::get_if<ConstantProfile>(&k.profile))
    return constant->c;  // exact, independent of the cell

  const int n = m.dim;
  const double rho = radius_for_measure(m, cell_measure);
  static const GaussRule rule = gauss_legendre(96);
  double acc = 0.0;

  if (const auto* riesz = std::get_if<RieszProfile>(&k.profile)) {
    // Substitute u = t^beta, beta = n - alpha:
    //   int_0^rho t^{-alpha} s(t)^{n-1} dt
    //     = (1/beta) int_0^{rho^beta} (s(t)/t)^{n-1} du,  t = u^{1/beta}.
    // The pure power part becomes the constant 1, so the rule is exact where
    // the integrand is worst and no node touches the singularity.
    const double beta = n - riesz->alpha;
    const double upper = std::pow(rho, beta);
    for (int i = 0; i < rule.points.size(); ++i) {
      double u = 0.5 * upper * (rule.points[i] + 1.0);
      double t = std::pow(u, 1.0 / beta);
      double st_over_t = t == 0.0 ? 1.0 : warp(m, t) / t;
      acc += 0.5 * upper * rule.weights[i] * std::pow(st_over_t, n - 1);
    }
    acc /= beta;
  } else {
    // bounded profiles: the integrand is smooth in t, integrate directly
    for (int i = 0; i < rule.points.size(); ++i) {
      double t = 0.5 * rho * (rule.points[i] + 1.0);
      acc += 0.5 * rho * rule.weights[i] * eval(k, t) *
             std::pow(warp(m, t), n - 1);
    }
  }

  return unit_sphere_measure(n) * acc / cell_measure;
}

Kernel parse_kernel(std::string_view spec, int dim) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("kernel spec must look like riesz:alpha=1.0");
  std::string_view tag = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  auto eq = rest.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("kernel spec missing parameter value");
  std::string_view key = rest.substr(0, eq);
  double value = 0.0;
  try {
    value = std::stod(std::string(rest.substr(eq + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("kernel spec has a malformed number");
  }

  if (tag == "riesz" && key == "alpha") return Kernel::riesz(value, dim);
  if (tag == "exp" && key == "beta") return Kernel::exponential(value, dim);
  if (tag == "const" && key == "c") return Kernel::constant(value, dim);
  throw std::invalid_argument("unknown kernel spec: " + std::string(spec));
}

}  // namespace geokern
