// Command-line front end: channel capacity reports, the verification suite,
// and parameter sweeps.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qzec/capacity.hpp"
#include "qzec/ncgraph.hpp"
#include "qzec/report.hpp"
#include "qzec/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitUncertified = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qzec::SpecError(qzec::SpecErrorKind::MalformedJson,
                                 "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_compute(const std::string& path, int copies, const qzec::SolverConfig& cfg,
                bool json_out) {
  qzec::Channel ch;
  try {
    ch = qzec::realize(qzec::parse_channel_spec(read_file(path)));
  } catch (const qzec::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    qzec::CapacityReport rep = qzec::full_report(ch, cfg, {copies});
    std::cout << (json_out ? qzec::report_to_json(rep) + "\n"
                           : qzec::report_to_table(rep));
    return rep.certified ? kExitOk : kExitUncertified;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

int cmd_verify(std::uint64_t seed, const qzec::SolverConfig& cfg, bool json_out) {
  auto rows = qzec::run_acceptance_suite(seed, cfg);
  bool all_pass = true;
  if (json_out) {
    std::cout << "[";
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << "{\"name\": " << nlohmann::json(rows[i].name).dump()
                << ", \"pass\": " << (rows[i].pass ? "true" : "false")
                << ", \"detail\": " << nlohmann::json(rows[i].detail).dump() << "}";
      all_pass = all_pass && rows[i].pass;
    }
    std::cout << "]\n";
  } else {
    for (const auto& row : rows) {
      std::cout << (row.pass ? "PASS  " : "FAIL  ") << row.name << "\n      "
                << row.detail << "\n";
      all_pass = all_pass && row.pass;
    }
    std::cout << (all_pass ? "all criteria passed\n" : "some criteria FAILED\n");
  }
  return all_pass ? kExitOk : kExitInput;
}

struct GridAxis {
  double start = 0.0, stop = 0.0, step = 1.0;
};

GridAxis parse_axis(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_object())
    throw qzec::SpecError(qzec::SpecErrorKind::BadField,
                          std::string("sweep grid needs axis \"") + key + "\"");
  const auto& a = doc[key];
  GridAxis axis;
  axis.start = a.at("start").get<double>();
  axis.stop = a.at("stop").get<double>();
  axis.step = a.at("step").get<double>();
  if (axis.step <= 0.0)
    throw qzec::SpecError(qzec::SpecErrorKind::BadField, "sweep step must be positive");
  return axis;
}

std::vector<double> axis_values(const GridAxis& a) {
  std::vector<double> v;
  for (double x = a.start; x <= a.stop + 1e-12; x += a.step) v.push_back(x);
  return v;
}

void sweep_row(std::ostream& out, const qzec::Channel& ch,
               const qzec::SolverConfig& cfg) {
  qzec::UpsilonResult res = qzec::upsilon(ch, cfg);
  out << qzec::format_double(res.value) << ","
      << qzec::snap_floor(res.value) << ","
      << qzec::noncommutative_graph_dim(ch) << ","
      << (res.certified ? "1" : "0") << "\n";
}

int cmd_sweep(const std::string& path, const qzec::SolverConfig& cfg) {
  nlohmann::json doc;
  std::string family;
  try {
    doc = nlohmann::json::parse(read_file(path));
    if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string())
      throw qzec::SpecError(qzec::SpecErrorKind::BadField,
                            "sweep spec needs a string \"family\"");
    family = doc["family"].get<std::string>();
    if (family != "extremal" && family != "pauli_edge")
      throw qzec::SpecError(qzec::SpecErrorKind::UnknownType,
                            "unknown sweep family \"" + family + "\"");
    if (!doc.contains("grid") || !doc["grid"].is_object())
      throw qzec::SpecError(qzec::SpecErrorKind::BadField, "sweep spec needs a \"grid\"");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    if (family == "extremal") {
      auto thetas = axis_values(parse_axis(doc["grid"], "theta"));
      auto phis = axis_values(parse_axis(doc["grid"], "phi"));
      std::cout << "theta,phi,upsilon,m0_qns,dim_s,certified\n";
      for (double t : thetas)
        for (double p : phis) {
          std::cout << qzec::format_double(t) << "," << qzec::format_double(p) << ",";
          sweep_row(std::cout, qzec::extremal_channel(t, p), cfg);
        }
    } else {
      auto ts = axis_values(parse_axis(doc["grid"], "t"));
      std::cout << "t,upsilon,m0_qns,dim_s,certified\n";
      for (double t : ts) {
        qzec::PauliSpec spec{{t, 1.0 - t, 0.0, 0.0}};
        std::cout << qzec::format_double(t) << ",";
        sweep_row(std::cout, qzec::pauli_channel(spec), cfg);
      }
    }
    return kExitOk;
  } catch (const qzec::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-shot quantum non-signalling assisted zero-error capacities"};
  app.require_subcommand(1);

  qzec::SolverConfig cfg;
  std::string input_path;
  int copies = 1;
  bool json_out = false;
  std::uint64_t seed = qzec::kDefaultVerifySeed;

  CLI::App* compute = app.add_subcommand("compute", "capacity report for a channel spec");
  compute->add_option("spec", input_path, "channel spec JSON file")->required();
  compute->add_option("--copies", copies, "tensor copies for the finite-n rate")
      ->check(CLI::PositiveNumber);
  compute->add_option("--gap-tol", cfg.gap_tol, "solver duality-gap tolerance");
  compute->add_option("--feas-tol", cfg.feas_tol, "solver feasibility tolerance");
  compute->add_flag("--json", json_out, "machine-readable output");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--seed", seed, "seed for the randomized populations");
  verify->add_flag("--json", json_out, "machine-readable output");

  CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep over a parameter grid");
  sweep->add_option("spec", input_path, "sweep spec JSON file")->required();
  sweep->add_option("--gap-tol", cfg.gap_tol, "solver duality-gap tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInput : kExitOk;
  }

  if (compute->parsed()) return cmd_compute(input_path, copies, cfg, json_out);
  if (verify->parsed()) return cmd_verify(seed, cfg, json_out);
  return cmd_sweep(input_path, cfg);
}
