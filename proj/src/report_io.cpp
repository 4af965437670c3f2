#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "geokern/experiments.hpp"

namespace geokern {

namespace {

using nlohmann::json;

json row_to_json(const ReportRow& row) {
  return json{{"domain", row.domain},   {"measure", row.measure},
              {"lambda1", row.lambda1}, {"lambda2", row.lambda2},
              {"gap", row.gap},         {"aux", row.aux}};
}

json verdict_to_json(const Verdict& v) {
  return json{{"claim", v.claim},
              {"pass", v.pass},
              {"skipped", v.skipped},
              {"margin", v.margin},
              {"note", v.note}};
}

std::string csv_escape(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double aux_or(const ReportRow& row, const std::string& key, double fallback) {
  auto it = row.aux.find(key);
  return it == row.aux.end() ? fallback : it->second;
}

void write_csv(const ExperimentReport& r, std::ostream& os) {
  if (r.experiment == "rfk_sweep") {
    os << "trial,domain,measure,lambda1,ratio_to_ball\n";
    for (const auto& row : r.rows)
      os << static_cast<long>(aux_or(row, "trial", -1)) << ','
         << csv_escape(row.domain) << ',' << csv_number(row.measure) << ','
         << csv_number(row.lambda1) << ','
         << csv_number(aux_or(row, "ratio_to_ball", 0.0)) << '\n';
    return;
  }
  if (r.experiment == "hks_sweep") {
    os << "separation,domain,measure,lambda1_union,lambda2_union,lambda1_ball,"
          "gap,gamma,I1,I2,I3,I4,lower_bound,min_eigenvalue\n";
    for (const auto& row : r.rows)
      os << csv_number(aux_or(row, "separation", 0.0)) << ','
         << csv_escape(row.domain) << ',' << csv_number(row.measure) << ','
         << csv_number(row.lambda1) << ',' << csv_number(row.lambda2) << ','
         << csv_number(aux_or(row, "lambda1_ball", 0.0)) << ','
         << csv_number(row.gap) << ',' << csv_number(aux_or(row, "gamma", 0.0))
         << ',' << csv_number(aux_or(row, "I1", 0.0)) << ','
         << csv_number(aux_or(row, "I2", 0.0)) << ','
         << csv_number(aux_or(row, "I3", 0.0)) << ','
         << csv_number(aux_or(row, "I4", 0.0)) << ','
         << csv_number(aux_or(row, "lower_bound", 0.0)) << ','
         << csv_number(aux_or(row, "min_eigenvalue", 0.0)) << '\n';
    return;
  }
  if (r.experiment == "rearrange_sweep") {
    os << "trial,domain,measure,lhs,rhs,ratio\n";
    for (const auto& row : r.rows)
      os << static_cast<long>(aux_or(row, "trial", -1)) << ','
         << csv_escape(row.domain) << ',' << csv_number(row.measure) << ','
         << csv_number(aux_or(row, "lhs", 0.0)) << ','
         << csv_number(aux_or(row, "rhs", 0.0)) << ','
         << csv_number(aux_or(row, "ratio", 0.0)) << '\n';
    return;
  }
  os << "domain,measure,lambda1,lambda2,gap\n";
  for (const auto& row : r.rows)
    os << csv_escape(row.domain) << ',' << csv_number(row.measure) << ','
       << csv_number(row.lambda1) << ',' << csv_number(row.lambda2) << ','
       << csv_number(row.gap) << '\n';
}

}  // namespace

ReportFormat parse_format(std::string_view tag) {
  if (tag == "json") return ReportFormat::Json;
  if (tag == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format: " + std::string(tag) +
                              " (expected json or csv)");
}

void report_write(const ExperimentReport& r, const std::filesystem::path& path,
                  ReportFormat format) {
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("report_write: cannot open " + path.string());

  if (format == ReportFormat::Csv) {
    write_csv(r, os);
  } else {
    json j{{"experiment", r.experiment},
           {"manifold", r.manifold},
           {"dim", r.dim},
           {"kernel", r.kernel},
           {"config", r.config},
           {"rows", json::array()},
           {"verdicts", json::array()}};
    for (const auto& row : r.rows) j["rows"].push_back(row_to_json(row));
    for (const auto& v : r.verdicts) j["verdicts"].push_back(verdict_to_json(v));
    os << j.dump(2) << '\n';
  }
  if (!os.good())
    throw std::runtime_error("report_write: write failed for " + path.string());
}

ExperimentReport report_read_json(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is)
    throw std::runtime_error("report_read_json: cannot open " + path.string());
  json j;
  is >> j;

  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.manifold = j.at("manifold").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.kernel = j.at("kernel").get<std::string>();
  r.config = j.at("config").get<std::map<std::string, double>>();
  for (const auto& jr : j.at("rows")) {
    ReportRow row;
    row.domain = jr.at("domain").get<std::string>();
    row.measure = jr.at("measure").get<double>();
    row.lambda1 = jr.at("lambda1").get<double>();
    row.lambda2 = jr.at("lambda2").get<double>();
    row.gap = jr.at("gap").get<double>();
    row.aux = jr.at("aux").get<std::map<std::string, double>>();
    r.rows.push_back(std::move(row));
  }
  for (const auto& jv : j.at("verdicts")) {
    Verdict v;
    v.claim = jv.at("claim").get<std::string>();
    v.pass = jv.at("pass").get<bool>();
    v.skipped = jv.at("skipped").get<bool>();
    v.margin = jv.at("margin").get<double>();
    v.note = jv.at("note").get<std::string>();
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

}  // namespace geokern
