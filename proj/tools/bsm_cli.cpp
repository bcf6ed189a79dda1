#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsm/bsm_solvers.hpp"
#include "bsm/experiment.hpp"
#include "bsm/lp_export.hpp"

namespace {

// "axis=start:stop:step" or "axis=v1,v2,..." (a bare "axis=v" is a one-point
// sweep).
void parse_sweep(const std::string& text, bsm::ExperimentSpec& spec) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("--sweep expects axis=values");
  }
  spec.sweep_axis = text.substr(0, eq);
  const std::string body = text.substr(eq + 1);
  if (body.empty()) throw std::invalid_argument("--sweep has no values");

  auto number = [](const std::string& s) {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad sweep value \"" + s + "\"");
    return v;
  };

  if (body.find(':') != std::string::npos) {
    double parts[3];
    size_t from = 0;
    for (int i = 0; i < 3; ++i) {
      const auto colon = body.find(':', from);
      if ((colon == std::string::npos) != (i == 2)) {
        throw std::invalid_argument("--sweep range needs start:stop:step");
      }
      parts[i] = number(body.substr(from, colon - from));
      from = colon + 1;
    }
    const auto [start, stop, step] = std::tuple{parts[0], parts[1], parts[2]};
    if (!(step > 0.0) || stop < start) {
      throw std::invalid_argument("--sweep range needs stop >= start and step > 0");
    }
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) spec.sweep_values.push_back(start + i * step);
  } else {
    size_t from = 0;
    for (;;) {
      const auto comma = body.find(',', from);
      spec.sweep_values.push_back(number(body.substr(from, comma - from)));
      if (comma == std::string::npos) break;
      from = comma + 1;
    }
  }
}

int export_ilp(const bsm::ExperimentSpec& spec, const std::string& path,
               const std::string& mode_name) {
  bsm::IlpMode mode;
  if (mode_name == "utility") {
    mode = bsm::IlpMode::Utility;
  } else if (mode_name == "robust") {
    mode = bsm::IlpMode::Robust;
  } else if (mode_name == "bsm") {
    mode = bsm::IlpMode::Bsm;
  } else {
    throw std::invalid_argument("--ilp-mode must be utility, robust or bsm");
  }

  bsm::BuiltInstance built = bsm::build_instance(spec);
  double optg = 0.0;
  if (mode == bsm::IlpMode::Bsm) {
    optg = bsm::estimate_optima(*built.oracle, spec.k).opt_g();
  }

  std::string text;
  if (const auto* co = dynamic_cast<const bsm::CoverageOracle*>(built.oracle.get())) {
    text = bsm::export_ilp_mc(co->instance(), spec.k, mode, spec.tau, optg);
  } else if (const auto* bo =
                 dynamic_cast<const bsm::BenefitOracle*>(built.oracle.get())) {
    text = bsm::export_ilp_fl(bo->matrix(), spec.k, mode, spec.tau, optg);
  } else {
    throw std::invalid_argument(
        "ILP export covers coverage and facility-location instances only");
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  std::cerr << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-aware submodular maximization harness"};

  bsm::ExperimentSpec spec;
  std::string problem = "mc";
  std::string kernel = "rbf";
  std::string sweep_text;
  std::string out_path = "-";
  std::string ilp_path;
  std::string ilp_mode = "utility";
  bool no_timing = false;

  app.add_option("--problem", problem, "Problem family")
      ->check(CLI::IsMember({"mc", "im", "fl"}))
      ->capture_default_str();
  app.add_option("--graph", spec.graph_path, "Edge-list file (\"src dst\" lines)");
  app.add_option("--groups", spec.groups_path,
                 "Group file (\"node_id group_label\" lines)");
  app.add_option("--cover", spec.cover_path,
                 "Set-system file (\"item_id user_id\" lines)");
  app.add_option("--points", spec.points_path, "Point CSV (id,group,x1,...,xd)");
  app.add_option("--gen", spec.gen_spec,
                 "Synthetic instance: sbm:n=..,props=a/b,pin=..,pout=.. | "
                 "blobs:counts=../..,centers=x;y/x;y,sigmas=../.. | "
                 "hard:blocks=..,alpha=..,m=..");
  app.add_flag("--directed", spec.directed, "Treat edge lists as directed");
  app.add_option("--alg", spec.algorithms,
                 "Algorithms: greedy, saturate, tsgreedy, bsm-saturate, "
                 "brute-force (repeatable)")
      ->delimiter(',');
  app.add_option("--sweep", sweep_text,
                 "Sweep axis: tau=0.1:0.9:0.1 | k=5:50:5 | eps=0.05,0.1");
  app.add_option("--k", spec.k, "Solution size")->capture_default_str();
  app.add_option("--tau", spec.tau, "Fairness factor in [0,1]")
      ->capture_default_str();
  app.add_option("--eps", spec.eps, "Bisection accuracy in (0,1)")
      ->capture_default_str();
  app.add_option("--p", spec.p, "Influence propagation probability")
      ->capture_default_str();
  app.add_option("--rr", spec.rr_count, "Influence training samples")
      ->capture_default_str();
  app.add_option("--reps", spec.mc_reps, "Influence evaluation replications")
      ->capture_default_str();
  app.add_option("--kernel", kernel, "Facility benefit kernel")
      ->check(CLI::IsMember({"rbf", "kmedian"}))
      ->capture_default_str();
  app.add_option("--dbar", spec.dbar,
                 "kmedian cutoff distance (<= 0 picks the max distance)")
      ->capture_default_str();
  app.add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  app.add_option("--workers", spec.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--out", out_path, "Output path (- for stdout)")
      ->capture_default_str();
  app.add_option("--format", spec.format, "Sweep output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--no-timing", no_timing,
               "Drop the wall_ms column (byte-reproducible output)");
  app.add_option("--export-ilp", ilp_path,
                 "Write the instance as an LP file and exit");
  app.add_option("--ilp-mode", ilp_mode, "LP variant for --export-ilp")
      ->check(CLI::IsMember({"utility", "robust", "bsm"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  spec.problem = problem == "im" ? bsm::ExperimentSpec::Problem::Influence
                 : problem == "fl" ? bsm::ExperimentSpec::Problem::Facility
                                   : bsm::ExperimentSpec::Problem::Coverage;
  spec.kernel = kernel == "kmedian" ? bsm::Kernel::KMedian : bsm::Kernel::Rbf;
  spec.timing = !no_timing;

  try {
    if (!sweep_text.empty()) parse_sweep(sweep_text, spec);

    if (!ilp_path.empty()) return export_ilp(spec, ilp_path, ilp_mode);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (out_path != "-") {
      file.open(out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + out_path);
      out = &file;
    }

    if (spec.sweep_axis.empty()) return bsm::run_single(spec, *out);
    return bsm::run_sweep(spec, *out).exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
