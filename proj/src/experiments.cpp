#include "geokern/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "geokern/rearrange.hpp"

namespace geokern {

bool ExperimentReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.pass || v.skipped; });
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                          std::uint64_t index) {
  // splitmix64 over the combined stream id
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1) +
                    0xbf58476d1ce4e5b9ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Quadrature ball_rule_budget(const Manifold& m, const Point& center,
                            double radius, int node_budget) {
  if (node_budget < 8)
    throw std::invalid_argument("ball_rule_budget: budget too small");
  switch (m.dim) {
    case 1:
      return ball_rule(m, center, radius,
                       std::max(4, node_budget / 2), 4);
    case 2: {
      int radial = std::max(4, static_cast<int>(std::lround(
                                   std::sqrt(node_budget / 2.0))));
      return ball_rule(m, center, radius, radial, 2 * radial);
    }
    case 3: {
      int radial = std::max(4, static_cast<int>(std::lround(
                                   std::cbrt(node_budget / 2.0))));
      return ball_rule(m, center, radius, radial, 2 * radial);
    }
  }
  throw std::logic_error("ball_rule_budget: unreachable");
}

namespace {

// Cycle of random families used by the sweeps; perturbed boundaries exist only
// in dimension 2.
DomainFamily family_for_trial(const Manifold& m, int trial) {
  if (m.dim == 2) {
    switch (trial % 3) {
      case 0: return DomainFamily::disjoint_balls(2);
      case 1: return DomainFamily::perturbed_ball();
      default: return DomainFamily::disjoint_balls(3);
    }
  }
  return DomainFamily::disjoint_balls(2 + trial % 2);
}

double recorded_measure(const Domain& d, long samples, std::uint64_t seed) {
  return measure_estimate(d, samples, seed).value;
}

// Positive-normalized copy of an eigenvector column.
Eigen::VectorXd positive_normalized(const Eigen::VectorXd& v) {
  Eigen::Index peak;
  v.cwiseAbs().maxCoeff(&peak);
  return v[peak] < 0.0 ? Eigen::VectorXd(-v) : v;
}

}  // namespace

ExperimentReport rfk_sweep(const Manifold& m, const Kernel& k,
                           double target_measure, int trials,
                           std::uint64_t seed, const SweepConfig& config) {
  if (trials < 1) throw std::invalid_argument("rfk_sweep: trials >= 1");

  ExperimentReport report;
  report.experiment = "rfk_sweep";
  report.manifold = m.name();
  report.dim = m.dim;
  report.kernel = k.spec_string();
  report.config = {{"target_measure", target_measure},
                   {"trials", static_cast<double>(trials)},
                   {"seed", static_cast<double>(seed)},
                   {"slack", config.slack},
                   {"ball_radial", static_cast<double>(config.ball_radial)},
                   {"ball_angular", static_cast<double>(config.ball_angular)},
                   {"region_nodes", static_cast<double>(config.region_nodes)}};

  const double ball_radius = radius_for_measure(m, target_measure);
  Domain reference = Domain::ball_at_origin(m, ball_radius);
  Quadrature ball_q = ball_rule(m, canonical_center(m), ball_radius,
                                config.ball_radial, config.ball_angular);
  double ball_lambda1;
  double ball_lambda2;
  {
    SpectralResult r = eigensolve(assemble(ball_q, k));
    ball_lambda1 = r.eigenvalues[0];
    ball_lambda2 = r.eigenvalues.size() > 1 ? r.eigenvalues[1] : 0.0;
  }

  ReportRow ball_row;
  ball_row.domain = reference.describe();
  ball_row.measure = target_measure;
  ball_row.lambda1 = ball_lambda1;
  ball_row.lambda2 = ball_lambda2;
  ball_row.gap = ball_lambda1 - std::abs(ball_lambda2);
  ball_row.aux = {{"trial", 0.0}, {"ratio_to_ball", 1.0}};
  report.rows.push_back(std::move(ball_row));

  double worst_ratio = 1.0;
  for (int trial = 1; trial <= trials; ++trial) {
    try {
      Domain d = random_domain(m, family_for_trial(m, trial - 1),
                               target_measure, derive_seed(seed, 1, trial));
      Quadrature q =
          region_rule_kept(d, config.region_nodes, derive_seed(seed, 2, trial));
      SpectralResult r = eigensolve(assemble(q, k));

      ReportRow row;
      row.domain = d.describe();
      row.measure = recorded_measure(d, config.measure_samples,
                                     derive_seed(seed, 3, trial));
      row.lambda1 = r.eigenvalues[0];
      row.lambda2 = r.eigenvalues.size() > 1 ? r.eigenvalues[1] : 0.0;
      row.gap = std::abs(row.lambda1) - std::abs(row.lambda2);
      double ratio = row.lambda1 / ball_lambda1;
      row.aux = {{"trial", static_cast<double>(trial)},
                 {"ratio_to_ball", ratio}};
      worst_ratio = std::max(worst_ratio, ratio);
      report.rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw std::runtime_error("rfk_sweep: trial " + std::to_string(trial) +
                               " failed: " + e.what());
    }
  }

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return a.lambda1 > b.lambda1;
                   });

  Verdict v;
  v.claim = "ball_maximizes_lambda1";
  v.margin = (1.0 + config.slack) - worst_ratio;
  v.pass = v.margin >= 0.0;
  report.verdicts.push_back(std::move(v));
  return report;
}

SignSplitReport sign_split_check(const Quadrature& q, const Kernel& k) {
  SpectralResult r = eigensolve(assemble(q, k));
  if (r.eigenvalues.size() < 2)
    throw std::invalid_argument("sign_split_check: need at least two nodes");

  SignSplitReport report;
  report.lambda2 = r.eigenvalues[1];
  if (!(report.lambda2 > 0.0)) {
    report.hypothesis_ok = false;  // chain vacuous for non-positive lambda2
    return report;
  }

  Eigen::VectorXd u2 = r.eigenvectors.col(1);
  double zero_tol = 1e-12 * u2.cwiseAbs().maxCoeff();
  std::vector<bool> plus(q.size()), minus(q.size());
  int n_plus = 0, n_minus = 0;
  for (int i = 0; i < q.size(); ++i) {
    bool p = u2[i] >= -zero_tol;  // zero entries join the positive side
    plus[i] = p;
    minus[i] = !p;
    (p ? n_plus : n_minus)++;
  }
  if (n_plus == 0 || n_minus == 0)
    throw std::runtime_error(
        "sign_split_check: u2 is sign-definite, which contradicts "
        "orthogonality to the positive u1; refine the discretization");

  report.lambda1_plus =
      eigensolve(assemble(restrict_rule(q, plus), k)).eigenvalues[0];
  report.lambda1_minus =
      eigensolve(assemble(restrict_rule(q, minus), k)).eigenvalues[0];
  report.holds = std::min(report.lambda1_plus, report.lambda1_minus) >=
                 report.lambda2 * (1.0 - 0.01);
  return report;
}

ExperimentReport hks_sweep(const Kernel& k, double half_measure,
                           std::vector<double> separations, int nodes_per_ball,
                           std::uint64_t seed, const HksConfig& config) {
  if (!k.decays_at_infinity())
    throw std::invalid_argument(
        "hks_sweep: kernel must decay at infinity (constant profiles are not "
        "admissible)");
  if (separations.empty())
    throw std::invalid_argument("hks_sweep: need at least one separation");
  const Manifold m = Manifold::hyperbolic(k.manifold_dim);
  const double radius = radius_for_measure(m, half_measure);
  std::sort(separations.begin(), separations.end());
  for (double l : separations)
    if (!(l > 2.0 * radius))
      throw std::invalid_argument(
          "hks_sweep: separation " + std::to_string(l) +
          " does not exceed twice the ball radius (balls overlap)");

  ExperimentReport report;
  report.experiment = "hks_sweep";
  report.manifold = m.name();
  report.dim = m.dim;
  report.kernel = k.spec_string();
  report.config = {
      {"half_measure", half_measure},
      {"ball_radius", radius},
      {"nodes_per_ball", static_cast<double>(nodes_per_ball)},
      {"seed", static_cast<double>(seed)},
      {"chain_slack", config.chain_slack},
      {"coupling_tol", config.coupling_tol}};

  const Point base = canonical_center(m);
  const auto frame = tangent_frame(m, base);

  bool hypothesis_ok = true;
  std::string hypothesis_note;
  double positivity_margin = std::numeric_limits<double>::infinity();
  bool positivity_ok = true;

  std::vector<double> gaps;
  double lambda1_ball_ref = 0.0;

  for (double l : separations) {
    Point c_plus = geodesic_point(m, base, frame[0], l / 2.0);
    Point c_minus = geodesic_point(m, base, -frame[0], l / 2.0);
    Quadrature q_plus = ball_rule_budget(m, c_plus, radius, nodes_per_ball);
    Quadrature q_minus = ball_rule_budget(m, c_minus, radius, nodes_per_ball);
    Quadrature q_union = union_rule(q_plus, q_minus);

    const OperatorMatrix a_union = assemble(q_union, k);
    SpectralResult ru = eigensolve(a_union);
    double lambda1_u = ru.eigenvalues[0];
    double lambda2_u = ru.eigenvalues[1];
    double min_eig = ru.eigenvalues.minCoeff();

    SpectralResult rp = eigensolve(assemble(q_plus, k));
    SpectralResult rm = eigensolve(assemble(q_minus, k));
    double lambda1_p = rp.eigenvalues[0];
    double lambda1_m = rm.eigenvalues[0];
    double lambda1_ball = lambda1_p;
    lambda1_ball_ref = lambda1_ball;

    // gamma-orthogonalized test vector v = u_plus (+) gamma u_minus against
    // the union's first eigenvector, all in weighted coordinates.
    Eigen::VectorXd u1_union = positive_normalized(ru.eigenvectors.col(0));
    Eigen::VectorXd up = positive_normalized(rp.eigenvectors.col(0));
    Eigen::VectorXd um = positive_normalized(rm.eigenvectors.col(0));
    const int np = q_plus.size(), nm = q_minus.size();
    double inner_plus = u1_union.head(np).dot(up);
    double inner_minus = u1_union.tail(nm).dot(um);
    double gamma = -inner_plus / inner_minus;

    double i1 = up.dot(a_union.entries.topLeftCorner(np, np) * up);
    double i2 =
        gamma * up.dot(a_union.entries.topRightCorner(np, nm) * um);
    double i3 =
        gamma * um.dot(a_union.entries.bottomLeftCorner(nm, np) * up);
    double i4 =
        gamma * gamma * um.dot(a_union.entries.bottomRightCorner(nm, nm) * um);
    double lower_bound = (i1 + i2 + i3 + i4) / (1.0 + gamma * gamma);

    double gap = std::abs(lambda1_ball - lambda2_u);
    gaps.push_back(gap);

    if (!(lambda2_u > 0.0)) {
      hypothesis_ok = false;
      hypothesis_note = "lambda2 <= 0 at separation " + std::to_string(l);
    }
    double pos_margin = min_eig + 1e-10 * lambda1_u;
    positivity_margin = std::min(positivity_margin, pos_margin);
    if (pos_margin < 0.0) positivity_ok = false;

    ReportRow row;
    row.domain = Domain::two_identical_balls(m, radius, l).describe();
    row.measure = 2.0 * ball_volume(m, radius);
    row.lambda1 = lambda1_u;
    row.lambda2 = lambda2_u;
    row.gap = gap;
    row.aux = {{"separation", l},
               {"lambda1_ball", lambda1_ball},
               {"ball_symmetry", std::abs(lambda1_p - lambda1_m) /
                                     std::abs(lambda1_p)},
               {"gamma", gamma},
               {"I1", i1},
               {"I2", i2},
               {"I3", i3},
               {"I4", i4},
               {"lower_bound", lower_bound},
               {"min_eigenvalue", min_eig}};
    report.rows.push_back(std::move(row));
  }

  auto add_verdict = [&](const std::string& claim, bool pass, double margin,
                         std::string note = "") {
    Verdict v;
    v.claim = claim;
    v.pass = pass;
    v.margin = margin;
    v.note = std::move(note);
    if (!hypothesis_ok) {
      v.skipped = true;
      v.note = "hypothesis violation: " + hypothesis_note;
    }
    report.verdicts.push_back(std::move(v));
  };

  // (a) modulus ordering: lambda2 never exceeds lambda1 of the union
  {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows)
      margin = std::min(margin, (row.lambda1 - row.lambda2) / row.lambda1);
    add_verdict("lambda2_below_lambda1_union", margin >= 0.0, margin);
  }
  // (b) chain bound: min over the two balls dominates lambda2 of the union
  {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows)
      margin = std::min(margin, row.aux.at("lambda1_ball") / row.lambda2 -
                                    (1.0 - config.chain_slack));
    add_verdict("min_ball_bound", margin >= 0.0, margin);
  }
  // (c) the gap sequence decreases along the sorted separations...
  {
    double min_drop = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i)
      min_drop = std::min(min_drop, gaps[i] - gaps[i + 1]);
    if (gaps.size() < 2) min_drop = 0.0;
    add_verdict("gap_monotone_decreasing",
                min_drop >= -1e-12 * std::abs(lambda1_ball_ref), min_drop);
  }
  // ...and the final gap is below the coupling tolerance
  {
    double margin =
        config.coupling_tol - gaps.back() / std::abs(lambda1_ball_ref);
    add_verdict("final_gap_small", margin >= 0.0, margin);
  }
  // no finite optimizer: lambda2 stays below the single-ball eigenvalue
  {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows)
      margin = std::min(margin, (1.0 + config.chain_slack) -
                                    row.lambda2 / row.aux.at("lambda1_ball"));
    add_verdict("no_finite_optimizer", margin >= 0.0, margin);
  }
  // (d) operator positivity; a violation with lambda2 > 0 only downgrades
  // this verdict to a skip (the chain statements key on lambda2 > 0)
  {
    Verdict v;
    v.claim = "operator_positive";
    v.pass = positivity_ok;
    v.margin = positivity_margin;
    if (!positivity_ok) {
      v.skipped = true;
      v.note = hypothesis_ok
                   ? "positivity violated but lambda2 > 0 (relaxed hypothesis)"
                   : "hypothesis violation: " + hypothesis_note;
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

ExperimentReport rearrange_sweep(const Manifold& m, const Kernel& k,
                                 double target_measure, int trials,
                                 std::uint64_t seed,
                                 const SweepConfig& config) {
  if (trials < 1) throw std::invalid_argument("rearrange_sweep: trials >= 1");

  ExperimentReport report;
  report.experiment = "rearrange_sweep";
  report.manifold = m.name();
  report.dim = m.dim;
  report.kernel = k.spec_string();
  report.config = {{"target_measure", target_measure},
                   {"trials", static_cast<double>(trials)},
                   {"seed", static_cast<double>(seed)},
                   {"slack", config.slack},
                   {"region_nodes", static_cast<double>(config.region_nodes)}};

  double min_ratio = std::numeric_limits<double>::infinity();
  double max_norm_drift = 0.0;
  for (int trial = 1; trial <= trials; ++trial) {
    Domain d = random_domain(m, family_for_trial(m, trial - 1), target_measure,
                             derive_seed(seed, 11, trial));
    Quadrature q =
        region_rule_kept(d, config.region_nodes, derive_seed(seed, 12, trial));

    Eigen::VectorXd u;
    if (trial % 2 == 1) {
      // first eigenfunction in node values, clipped at zero against roundoff
      SpectralResult r = eigensolve(assemble(q, k));
      Eigen::VectorXd u1 = positive_normalized(r.eigenvectors.col(0));
      u = (u1.array() / q.weights.array().sqrt()).cwiseMax(0.0);
    } else {
      // random smooth bumps centred at nodes
      std::mt19937_64 rng(derive_seed(seed, 13, trial));
      std::uniform_int_distribution<int> pick(0, q.size() - 1);
      std::uniform_real_distribution<double> amp(0.3, 1.0), width(1.0, 6.0);
      int bumps = 1 + static_cast<int>(rng() % 3);
      u = Eigen::VectorXd::Zero(q.size());
      for (int b = 0; b < bumps; ++b) {
        const Point p = q.nodes[pick(rng)];
        double a = amp(rng), c = width(rng);
        for (int i = 0; i < q.size(); ++i) {
          double dd = distance(m, p, q.nodes[i]);
          u[i] += a * std::exp(-c * dd * dd);
        }
      }
    }

    RieszSobolevReport rs = riesz_sobolev_check(q, k, u, config.slack);

    // canonicalized weighted-norm comparison: same multiset, same weight
    RearrangedPair pair = rearrange(q, u);
    auto canon_norm = [&](const Eigen::VectorXd& v, double w) {
      std::vector<double> sq(v.size());
      for (int i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
      std::sort(sq.begin(), sq.end());
      double acc = 0.0;
      for (double s : sq) acc += s;
      return w * acc;
    };
    double n_before = canon_norm(u, q.weights[0]);
    double n_after = canon_norm(pair.values, pair.ball_rule.weights[0]);
    double drift = n_before == 0.0 ? 0.0
                                   : std::abs(n_after - n_before) / n_before;
    max_norm_drift = std::max(max_norm_drift, drift);

    ReportRow row;
    row.domain = d.describe();
    row.measure = recorded_measure(d, config.measure_samples,
                                   derive_seed(seed, 14, trial));
    row.lambda1 = 0.0;
    row.lambda2 = 0.0;
    row.gap = 0.0;
    double ratio = rs.lhs > 0.0 ? rs.rhs / rs.lhs : 1.0;
    min_ratio = std::min(min_ratio, ratio);
    row.aux = {{"trial", static_cast<double>(trial)},
               {"lhs", rs.lhs},
               {"rhs", rs.rhs},
               {"ratio", ratio},
               {"norm_drift", drift}};
    report.rows.push_back(std::move(row));
  }

  {
    Verdict v;
    v.claim = "riesz_sobolev_holds";
    v.margin = min_ratio - (1.0 - config.slack);
    v.pass = v.margin >= 0.0;
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.claim = "norm_preserved_exactly";
    v.margin = -max_norm_drift;
    v.pass = max_norm_drift == 0.0;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace geokern
