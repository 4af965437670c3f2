#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "geokern/domains.hpp"
#include "geokern/kernels.hpp"
#include "geokern/quadrature.hpp"
#include "geokern/spectral.hpp"

namespace geokern {

struct ReportRow {
  std::string domain;
  double measure = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  std::map<std::string, double> aux;

  bool operator==(const ReportRow&) const = default;
};

struct Verdict {
  std::string claim;
  bool pass = false;
  bool skipped = false;  // hypothesis violation, not a failure
  double margin = 0.0;
  std::string note;

  bool operator==(const Verdict&) const = default;
};

struct ExperimentReport {
  std::string experiment;
  std::string manifold;
  int dim = 0;
  std::string kernel;
  std::map<std::string, double> config;
  std::vector<ReportRow> rows;
  std::vector<Verdict> verdicts;

  bool all_passed() const;
  bool operator==(const ExperimentReport&) const = default;
};

enum class ReportFormat { Json, Csv };
ReportFormat parse_format(std::string_view tag);  // "json" | "csv"

void report_write(const ExperimentReport& r, const std::filesystem::path& path,
                  ReportFormat format);
ExperimentReport report_read_json(const std::filesystem::path& path);

/// Product ball rule sized to approximately `node_budget` nodes, with the
/// radial/angular split balanced for the dimension.
Quadrature ball_rule_budget(const Manifold& m, const Point& center,
                            double radius, int node_budget);

/// Seed stream derivation: trials and separations draw independent streams
/// from (seed, tag, index) so any execution order produces identical reports.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                          std::uint64_t index);

struct SweepConfig {
  double slack = 0.02;          // allowed relative excess over the ball
  int ball_radial = 32;         // product rule on the reference ball
  int ball_angular = 64;
  int region_nodes = 1500;      // kept-node target for sampled rules
  long measure_samples = 400'000;
};

/// First-eigenvalue maximization sweep: the geodesic ball of the target
/// measure against `trials` random equal-measure domains. Row 0 carries the
/// ball; rows are sorted by lambda1 descending.
ExperimentReport rfk_sweep(const Manifold& m, const Kernel& k,
                           double target_measure, int trials,
                           std::uint64_t seed, const SweepConfig& config = {});

struct SignSplitReport {
  double lambda2 = 0.0;
  double lambda1_plus = 0.0;
  double lambda1_minus = 0.0;
  bool holds = false;
  bool hypothesis_ok = true;  // false iff lambda2 <= 0 (chain not applicable)
};

/// Splits the nodes by the sign of the second eigenfunction, solves each part,
/// and checks min(lambda1(plus), lambda1(minus)) >= lambda2 * (1 - 0.01).
/// Zero entries join the positive side; a sign-definite u_2 raises an error.
SignSplitReport sign_split_check(const Quadrature& q, const Kernel& k);

struct HksConfig {
  double chain_slack = 0.01;    // verdicts on the inequality chain
  double coupling_tol = 0.01;   // final |lambda1(ball) - lambda2| bound
};

/// Two identical hyperbolic balls of `half_measure` each, centers at the given
/// separations along a fixed geodesic: spectra of the union, the single-ball
/// eigenvalue, and the orthogonalized test-vector bound with its cross terms.
/// The kernel must decay at infinity.
ExperimentReport hks_sweep(const Kernel& k, double half_measure,
                           std::vector<double> separations, int nodes_per_ball,
                           std::uint64_t seed, const HksConfig& config = {});

/// Rearrangement inequality sweep: random equal-measure domains, first
/// eigenfunctions alternating with random smooth bumps, bilinear form compared
/// before and after symmetric-decreasing rearrangement.
ExperimentReport rearrange_sweep(const Manifold& m, const Kernel& k,
                                 double target_measure, int trials,
                                 std::uint64_t seed,
                                 const SweepConfig& config = {});

}  // namespace geokern
