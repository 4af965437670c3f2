// Command-line driver: single-domain eigenvalue runs and the randomized
// sweeps, with JSON/CSV reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "geokern/experiments.hpp"
#include "geokern/rearrange.hpp"

namespace {

using namespace geokern;

Manifold make_manifold(const std::string& name, int dim) {
  if (name == "sphere") return Manifold::sphere(dim);
  if (name == "hyperbolic") return Manifold::hyperbolic(dim);
  if (name == "euclidean") return Manifold::euclidean(dim);
  throw CLI::ValidationError("--manifold",
                             "expected sphere, hyperbolic or euclidean");
}

// --out is resolved against GEOKERN_OUT_DIR when relative.
std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("GEOKERN_OUT_DIR"))
      return std::filesystem::path(dir) / p;
  }
  return p;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  return values;
}

void print_verdicts(const ExperimentReport& r) {
  for (const auto& v : r.verdicts) {
    const char* status = v.skipped ? "SKIP" : (v.pass ? "PASS" : "FAIL");
    std::cout << "[" << status << "] " << v.claim << "  margin=" << v.margin;
    if (!v.note.empty()) std::cout << "  (" << v.note << ")";
    std::cout << "\n";
  }
}

int finish(const ExperimentReport& r, const std::string& out,
           const std::string& format) {
  print_verdicts(r);
  if (!out.empty()) {
    auto path = resolve_out(out);
    report_write(r, path, parse_format(format));
    std::cout << "report written to " << path.string() << "\n";
  }
  return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra of convolution-type kernels on model geometries"};
  app.require_subcommand(1);

  std::string manifold_name = "sphere", kernel_spec = "riesz:alpha=1.0";
  std::string domain_spec = "ball:r=0.8", out, format = "json";
  int dim = 2, nodes = 2000, trials = 20, nodes_per_ball = 600;
  double measure = 1.0, half_measure = 1.0, slack = 0.02;
  std::uint64_t seed = 1;
  std::string separations = "2,4,6,8";

  auto* lambda1 = app.add_subcommand(
      "lambda1", "leading eigenvalues of one domain's operator");
  lambda1->add_option("--manifold", manifold_name);
  lambda1->add_option("--dim", dim)->check(CLI::Range(1, 3));
  lambda1->add_option("--kernel", kernel_spec);
  lambda1->add_option("--domain", domain_spec);
  lambda1->add_option("--nodes", nodes)->check(CLI::PositiveNumber);
  lambda1->add_option("--seed", seed);
  lambda1->add_option("--out", out);
  lambda1->add_option("--format", format);

  auto* rfk = app.add_subcommand(
      "rfk-sweep", "ball versus random equal-measure domains, first eigenvalue");
  rfk->add_option("--manifold", manifold_name);
  rfk->add_option("--dim", dim)->check(CLI::Range(1, 3));
  rfk->add_option("--kernel", kernel_spec);
  rfk->add_option("--measure", measure)->required();
  rfk->add_option("--trials", trials)->check(CLI::PositiveNumber);
  rfk->add_option("--seed", seed);
  rfk->add_option("--slack", slack);
  rfk->add_option("--nodes", nodes)->check(CLI::PositiveNumber);
  rfk->add_option("--out", out);
  rfk->add_option("--format", format);

  auto* hks = app.add_subcommand(
      "hks-sweep", "two drifting hyperbolic balls, second eigenvalue");
  hks->add_option("--kernel", kernel_spec);
  hks->add_option("--dim", dim)->check(CLI::Range(1, 3));
  hks->add_option("--half-measure", half_measure)->required();
  hks->add_option("--separations", separations);
  hks->add_option("--nodes-per-ball", nodes_per_ball)->check(CLI::PositiveNumber);
  hks->add_option("--seed", seed);
  hks->add_option("--out", out);
  hks->add_option("--format", format);

  auto* rearr = app.add_subcommand(
      "rearrange-check", "rearrangement inequality on random domains");
  rearr->add_option("--manifold", manifold_name);
  rearr->add_option("--dim", dim)->check(CLI::Range(1, 3));
  rearr->add_option("--kernel", kernel_spec);
  rearr->add_option("--measure", measure);
  rearr->add_option("--trials", trials)->check(CLI::PositiveNumber);
  rearr->add_option("--seed", seed);
  rearr->add_option("--slack", slack);
  rearr->add_option("--nodes", nodes)->check(CLI::PositiveNumber);
  rearr->add_option("--out", out);
  rearr->add_option("--format", format);

  CLI11_PARSE(app, argc, argv);

  try {
    if (lambda1->parsed()) {
      Manifold m = make_manifold(manifold_name, dim);
      Kernel k = parse_kernel(kernel_spec, dim);
      Domain d = parse_domain_spec(m, domain_spec);

      Quadrature q;
      if (const auto* ball = std::get_if<GeodesicBall>(&d.shape))
        q = ball_rule_budget(m, ball->center, ball->radius, nodes);
      else
        q = region_rule_kept(d, nodes, seed);

      SpectralResult r = eigensolve(assemble(q, k));
      JentschReport jr = jentsch_check(r, 1e-6, 1e-8);

      ExperimentReport report;
      report.experiment = "lambda1";
      report.manifold = m.name();
      report.dim = dim;
      report.kernel = k.spec_string();
      report.config = {{"nodes", static_cast<double>(q.size())},
                       {"seed", static_cast<double>(seed)}};
      ReportRow row;
      row.domain = d.describe();
      row.measure = measure_estimate(d).value;
      row.lambda1 = r.eigenvalues[0];
      row.lambda2 = r.eigenvalues.size() > 1 ? r.eigenvalues[1] : 0.0;
      row.gap = jr.gap;
      report.rows.push_back(row);

      std::cout << "domain   " << row.domain << "\n"
                << "nodes    " << q.size() << "\n"
                << "measure  " << row.measure << "\n"
                << "lambda1  " << row.lambda1 << "\n"
                << "lambda2  " << row.lambda2 << "\n"
                << "gap      " << jr.gap << "\n"
                << "lambda1 positive: " << (jr.lambda1_positive ? "yes" : "no")
                << ", simple: " << (jr.simple ? "yes" : "no")
                << ", u1 single-signed: "
                << (jr.eigenfunction_positive ? "yes" : "no") << "\n";
      if (!out.empty()) {
        auto path = resolve_out(out);
        report_write(report, path, parse_format(format));
        std::cout << "report written to " << path.string() << "\n";
      }
      return 0;
    }

    if (rfk->parsed()) {
      Manifold m = make_manifold(manifold_name, dim);
      Kernel k = parse_kernel(kernel_spec, dim);
      SweepConfig config;
      config.slack = slack;
      config.region_nodes = nodes;
      return finish(rfk_sweep(m, k, measure, trials, seed, config), out,
                    format);
    }

    if (hks->parsed()) {
      Kernel k = parse_kernel(kernel_spec, dim);
      return finish(hks_sweep(k, half_measure, parse_list(separations),
                              nodes_per_ball, seed),
                    out, format);
    }

    if (rearr->parsed()) {
      Manifold m = make_manifold(manifold_name, dim);
      Kernel k = parse_kernel(kernel_spec, dim);
      SweepConfig config;
      config.slack = slack;
      config.region_nodes = nodes;
      return finish(rearrange_sweep(m, k, measure, trials, seed, config), out,
                    format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
