#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsm/digraph.hpp"
#include "bsm/facility.hpp"
#include "bsm/oracle.hpp"
#include "bsm/solution.hpp"

namespace bsm {

struct ExperimentSpec {
  enum class Problem { Coverage, Influence, Facility };
  Problem problem = Problem::Coverage;

  // Instance source: exactly one of graph/cover/points/gen (plus groups where
  // the format needs it).
  std::string graph_path;
  std::string groups_path;
  std::string cover_path;
  std::string points_path;
  std::string gen_spec;  // "sbm:...", "blobs:...", "hard:..."
  bool directed = false;

  std::vector<std::string> algorithms;  // greedy, saturate, tsgreedy,
                                        // bsm-saturate, brute-force

  std::string sweep_axis;            // "", "tau", "k" or "eps"
  std::vector<double> sweep_values;  // empty means single run

  int k = 5;
  double tau = 0.8;
  double eps = 0.05;
  double p = 0.1;          // influence propagation probability
  int rr_count = 100000;   // influence training samples
  int mc_reps = 10000;     // influence evaluation replications
  Kernel kernel = Kernel::Rbf;
  double dbar = 0.0;       // facility kmedian cutoff; <= 0 picks the default

  std::uint64_t seed = 1;
  int workers = 1;
  bool timing = true;      // false drops the wall_ms column
  std::string format = "csv";  // or "json" (one object per line)
};

// An instance ready to run: the oracle plus whatever the problem needs for
// reporting (the graph for fresh influence evaluation, display ids, the
// kmedian cutoff actually used).
struct BuiltInstance {
  std::unique_ptr<GroupUtilityOracle> oracle;
  std::unique_ptr<Digraph> graph;  // influence only
  std::vector<std::string> item_ids;
  double dbar_used = 0.0;
};

BuiltInstance build_instance(const ExperimentSpec& spec);

struct RowResult {
  std::string axis;   // sweep axis, empty for single runs
  double value = 0.0; // sweep value (the fixed tau for single runs)
  std::string algorithm;
  int k = 0;
  double tau = 0.0;
  double eps = 0.0;
  bool ok = true;
  std::string error;
  Solution sol;
  double opt_f_est = 0.0;
  double opt_g_est = 0.0;
  double threshold = 0.0;  // tau * opt_g_est
};

struct SweepReport {
  std::vector<RowResult> rows;
  int exit_code = 0;  // 0 all rows ok, 2 some row failed
};

// Runs (sweep value x algorithm) rows against one shared instance and writes
// them to out in spec.format. Row failures are recorded in the row and the
// sweep continues. Output bytes depend only on (spec contents, seed), never
// on worker count or timing (when spec.timing is false).
SweepReport run_sweep(const ExperimentSpec& spec, std::ostream& out);

// Single-configuration run with a human-readable report: instance summary,
// the shared estimates, and per algorithm the solution plus a constraint
// verdict against tau * OPT'_g. Returns the same exit-code convention.
int run_single(const ExperimentSpec& spec, std::ostream& out);

}  // namespace bsm
