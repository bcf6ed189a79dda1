// Acceptance gate: one numbered end-to-end check per line, printed as
// [PASS]/[FAIL] with the wall time. Any failed line makes the process exit
// nonzero, so ctest sees the whole gate as a single test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bsm/bsm_solvers.hpp"
#include "bsm/coverage.hpp"
#include "bsm/digraph.hpp"
#include "bsm/evaluate.hpp"
#include "bsm/exact.hpp"
#include "bsm/generators.hpp"
#include "bsm/greedy.hpp"
#include "bsm/influence.hpp"
#include "bsm/lp_export.hpp"
#include "bsm/objective.hpp"
#include "bsm/rng.hpp"
#include "bsm/saturate.hpp"

#include "support/demo_instance.hpp"
#include "support/ic_exact.hpp"
#include "support/naive.hpp"
#include "support/random_instances.hpp"

namespace {

struct Gate {
  bool ok = true;
  std::string why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

int failures = 0;

template <typename Body>
void criterion(int index, const char* label, double budget_s, Body&& body) {
  Gate gate;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(gate);
  } catch (const std::exception& e) {
    gate.expect(false, std::string("unexpected exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  gate.expect(secs <= budget_s, "over the time budget");
  if (!gate.ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", gate.ok ? "PASS" : "FAIL",
              index, label, secs, gate.ok ? "" : " -- ",
              gate.ok ? "" : gate.why.c_str());
  std::fflush(stdout);
}

std::vector<int> sorted(std::vector<int> items) {
  std::sort(items.begin(), items.end());
  return items;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bsm::CoverageOracle sweep_instance() {
  bsm::SbmConfig cfg;
  cfg.n = 500;
  cfg.proportions = {0.2, 0.8};
  cfg.p_intra = 0.1;
  cfg.p_inter = 0.02;
  cfg.seed = 39;
  auto [graph, pop] = bsm::gen_sbm(cfg);
  return bsm::CoverageOracle(bsm::coverage_from_digraph(graph, pop));
}

void check_worked_example(Gate& g) {
  auto oracle = testsupport::demo_coverage();
  auto est = bsm::estimate_optima(oracle, 2);

  bsm::Solution greedy = bsm::greedy_solution(oracle, est);
  g.expect(sorted(greedy.items) == std::vector<int>{0, 1},
           "greedy picked the wrong pair");
  g.expect(std::fabs(greedy.f_value - 0.75) <= 1e-9, "greedy utility is off");

  g.expect(sorted(est.g_result.items) == std::vector<int>{0, 3},
           "saturate picked the wrong witness");
  g.expect(std::fabs(est.opt_g() - 5.0 / 9) <= 1e-9,
           "maximin estimate is off");

  bsm::BsmParams params;
  params.k = 2;
  params.eps = 0.1;

  params.tau = 0.2;
  g.expect(sorted(bsm::bsm_tsgreedy(oracle, params, est).items) ==
               std::vector<int>{0, 2},
           "two-stage set at tau 0.2");
  bsm::Solution low = bsm::bsm_saturate(oracle, params, est);
  g.expect(sorted(low.items) == std::vector<int>{0, 2},
           "bisection set at tau 0.2");
  g.expect(low.meta.alpha_min.has_value() &&
               std::fabs(*low.meta.alpha_min - 0.9375) <= 1e-9,
           "alpha_min at tau 0.2");

  params.tau = 0.8;
  g.expect(sorted(bsm::bsm_tsgreedy(oracle, params, est).items) ==
               std::vector<int>{0, 3},
           "two-stage set at tau 0.8");
  bsm::Solution high = bsm::bsm_saturate(oracle, params, est);
  g.expect(sorted(high.items) == std::vector<int>{0, 3},
           "bisection set at tau 0.8");
  g.expect(high.meta.alpha_min.has_value() &&
               std::fabs(*high.meta.alpha_min - 0.8125) <= 1e-9,
           "alpha_min at tau 0.8");
}

void check_brute_force_concordance(Gate& g) {
  bsm::Rng rng(2401);
  const double taus[3] = {0.4, 0.7, 1.0};
  int constrained = 0;
  int bisection_ahead = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int c = 2 + trial % 2;
    const int n = 6 + (5 * trial) % 7;
    const int m = 8 + (3 * trial) % 13;
    const int k = 1 + trial % 3;
    const double tau = taus[trial % 3];

    std::unique_ptr<bsm::GroupUtilityOracle> oracle;
    if (trial % 2 == 0) {
      oracle = std::make_unique<bsm::CoverageOracle>(
          testsupport::random_coverage(rng, n, m, c));
    } else {
      oracle = std::make_unique<bsm::BenefitOracle>(
          testsupport::random_facility(rng, n, m, c));
    }

    bsm::ExactResult exact = bsm::brute_force(*oracle, k, tau);
    bsm::OptEstimates est = bsm::estimate_optima(*oracle, k);
    bsm::Solution greedy = bsm::greedy_solution(*oracle, est);
    g.expect(greedy.f_value >= (1.0 - std::exp(-1.0)) * exact.opt_f - 1e-9,
             "greedy fell below (1-1/e) of the optimum");

    bsm::BsmParams params;
    params.k = k;
    params.tau = tau;
    params.eps = 0.1;
    bsm::Solution ts = bsm::bsm_tsgreedy(*oracle, params, est);
    g.expect(ts.g_value >= tau * est.opt_g() - 1e-9,
             "two-stage set misses its share constraint");

    bsm::Solution sat = bsm::bsm_saturate(*oracle, params, est);
    if (sat.meta.alpha_min.has_value() && *sat.meta.alpha_min > 0.0) {
      g.expect(sat.g_value >=
                   (1.0 - 2.0 * params.eps) * tau * est.opt_g() - 1e-6,
               "bisection set misses its share guarantee");
    } else {
      g.expect(sat.g_value >= tau * est.opt_g() - 1e-9,
               "bisection fallback misses the witness share");
    }

    if (tau * est.opt_g() > 0.0) {
      ++constrained;
      if (sat.f_value >= ts.f_value - 1e-12) ++bisection_ahead;
    }
  }
  g.expect(constrained >= 10, "too few constrained cases to compare");
  g.expect(100 * bisection_ahead >= 60 * constrained,
           "bisection won fewer than 60% of the constrained cases");
}

void check_tradeoff_monotonicity(Gate& g) {
  bsm::CoverageOracle oracle = sweep_instance();
  bsm::OptEstimates est = bsm::estimate_optima(oracle, 5);
  const double greedy_f = bsm::greedy_solution(oracle, est).f_value;

  bsm::BsmParams params;
  params.k = 5;
  params.eps = 0.05;

  double prev_f = 2.0;
  double prev_g = -1.0;
  for (int i = 1; i <= 9; ++i) {
    params.tau = 0.1 * i;
    bsm::Solution sol = bsm::bsm_saturate(oracle, params, est);
    g.expect(sol.f_value <= prev_f + 1e-6,
             "utility rose as the share factor tightened");
    g.expect(sol.g_value >= prev_g - 1e-6,
             "fairness fell as the share factor tightened");
    if (i == 1) {
      g.expect(sol.f_value >= 0.98 * greedy_f,
               "the loosest sweep point lost more than 2% utility");
    }
    prev_f = sol.f_value;
    prev_g = sol.g_value;
  }
}

void check_cascade_estimators(Gate& g) {
  struct IcCase {
    bsm::Digraph graph;
    bsm::GroupedPopulation pop;
    std::vector<std::vector<int>> seed_sets;
  };
  std::vector<IcCase> cases;
  cases.push_back({bsm::Digraph(3, {{0, 1}, {1, 2}}),
                   {2, {0, 0, 1}},
                   {{0}, {0, 2}}});
  cases.push_back({bsm::Digraph(2, {{0, 1}, {1, 0}}), {2, {0, 1}}, {{0}}});
  cases.push_back({bsm::Digraph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}),
                   {2, {0, 1, 0, 1}},
                   {{0}, {3}}});
  cases.push_back({bsm::Digraph(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4},
                                    {3, 4}, {4, 0}, {3, 0}}),
                   {3, {0, 0, 1, 1, 2}},
                   {{0}, {1, 4}}});

  const double p = 0.3;
  std::uint64_t seed = 1000;
  for (const auto& c : cases) {
    bsm::RrSetOracle rr = bsm::build_rr_oracle(c.graph, p, 200000, c.pop, seed++);
    for (const auto& seeds : c.seed_sets) {
      testsupport::ExactIc exact = testsupport::ic_exact(c.graph, p, seeds, c.pop);
      bsm::McEstimate mc =
          bsm::mc_estimate(c.graph, p, seeds, 100000, c.pop, seed++);
      g.expect(std::fabs(mc.f - exact.f) <= 0.01,
               "monte-carlo utility drifted past 0.01");
      g.expect(std::fabs(mc.g - exact.g) <= 0.01,
               "monte-carlo fairness drifted past 0.01");
      g.expect(std::fabs(bsm::eval_f(rr, seeds) - exact.f) <= 0.01,
               "sample-cover utility drifted past 0.01");
      g.expect(std::fabs(bsm::eval_g(rr, seeds) - exact.g) <= 0.01,
               "sample-cover fairness drifted past 0.01");
    }
  }
}

void check_adversarial_collapse(Gate& g) {
  bsm::HardInstanceOracle oracle = bsm::gen_hard_instance(1, 0.1, 10);
  bsm::ExactResult exact = bsm::brute_force(oracle, 1, 0.5);
  g.expect(std::fabs(exact.opt_f - 0.9) <= 1e-9, "utility optimum is off");
  g.expect(exact.opt_f_items == std::vector<int>{1},
           "utility optimum picked the wrong item");
  g.expect(std::fabs(exact.opt_g - 0.09) <= 1e-9, "maximin optimum is off");
  g.expect(exact.opt_g_items == std::vector<int>{0},
           "maximin optimum picked the wrong item");
  g.expect(bsm::eval_g(oracle, std::vector<int>{1}) == 0.0,
           "the big item should leave its leader group at zero");

  bsm::BsmParams params;
  params.k = 1;
  params.tau = 0.5;
  params.eps = 0.05;
  bsm::Solution sol = bsm::bsm_saturate(oracle, params);
  g.expect(sol.items == std::vector<int>{0},
           "bisection should keep the small item");
  g.expect(sol.meta.alpha_min.has_value() &&
               *sol.meta.alpha_min <= 0.1 / (1.0 - params.eps) + 1e-9,
           "alpha_min exceeded the collapsed utility factor");
  g.expect(std::fabs(sol.g_value - 0.09) <= 1e-9,
           "the kept set should give every group the small value");
}

void check_lazy_parity_and_cli_bytes(Gate& g) {
  bsm::Rng rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    const int c = 2 + trial % 3;
    std::unique_ptr<bsm::GroupUtilityOracle> oracle;
    if (trial % 2 == 0) {
      oracle = std::make_unique<bsm::CoverageOracle>(
          testsupport::random_coverage(rng, 10 + trial % 21, 12 + trial % 9, c));
    } else {
      oracle = std::make_unique<bsm::BenefitOracle>(
          testsupport::random_facility(rng, 8 + trial % 12, 10 + trial % 11, c));
    }
    const int k = 1 + trial % 5;
    const auto& pop = oracle->population();

    bsm::PopulationAverage average(pop);
    bsm::GreedyTrace lazy = bsm::greedy_max(*oracle, average, k);
    testsupport::NaiveTrace naive =
        testsupport::naive_greedy_max(*oracle, average, k);
    g.expect(lazy.items == naive.items, "lazy and naive picked different items");
    g.expect(lazy.values == naive.values,
             "lazy and naive traced different values");

    bsm::TruncatedComposite cover =
        bsm::TruncatedComposite::weighted_cover(pop, 0.4);
    bsm::GreedyTrace lc =
        bsm::greedy_cover(*oracle, cover, k, cover.max_value());
    testsupport::NaiveTrace nc =
        testsupport::naive_greedy_cover(*oracle, cover, k, cover.max_value());
    g.expect(lc.items == nc.items && lc.values == nc.values &&
                 lc.reached_target == nc.reached_target,
             "lazy and naive cover runs disagree");
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bsm_acceptance";
  fs::create_directories(dir);
  auto run_cli = [&](const std::string& args, const fs::path& out) {
    const std::string cmd =
        std::string(CLI_BINARY) + " " + args + " --out " + out.string();
    return std::system(cmd.c_str());
  };
  const std::string cover_args =
      "--gen sbm:n=60,props=0.3/0.7,pin=0.15,pout=0.05 --k 4 "
      "--sweep tau=0.1:0.9:0.2 --eps 0.1 --seed 11 --no-timing";
  const std::string cascade_args =
      "--problem im --gen sbm:n=40,props=0.5/0.5,pin=0.2,pout=0.05 "
      "--p 0.2 --rr 5000 --reps 500 --sweep k=1:3:1 --tau 0.6 --seed 12 "
      "--no-timing";
  int code = 0;
  code |= run_cli(cover_args + " --workers 1", dir / "cover_a.csv");
  code |= run_cli(cover_args + " --workers 1", dir / "cover_b.csv");
  code |= run_cli(cover_args + " --workers 8", dir / "cover_c.csv");
  code |= run_cli(cascade_args + " --workers 1", dir / "cascade_a.csv");
  code |= run_cli(cascade_args + " --workers 8", dir / "cascade_b.csv");
  g.expect(code == 0, "a cli sweep exited nonzero");

  const std::string cover_a = read_file((dir / "cover_a.csv").string());
  g.expect(!cover_a.empty(), "the cli wrote no output");
  g.expect(cover_a == read_file((dir / "cover_b.csv").string()),
           "two identical runs differ");
  g.expect(cover_a == read_file((dir / "cover_c.csv").string()),
           "worker count changed the bytes");
  const std::string cascade_a = read_file((dir / "cascade_a.csv").string());
  g.expect(!cascade_a.empty() &&
               cascade_a == read_file((dir / "cascade_b.csv").string()),
           "worker count changed the cascade bytes");
}

void check_eps_insensitivity(Gate& g) {
  bsm::CoverageOracle oracle = sweep_instance();
  bsm::OptEstimates est = bsm::estimate_optima(oracle, 5);

  bsm::BsmParams params;
  params.k = 5;
  params.tau = 0.8;
  double f0 = 0.0;
  double g0 = 0.0;
  for (int i = 0; i < 8; ++i) {
    params.eps = 0.05 * (i + 1);
    bsm::Solution sol = bsm::bsm_saturate(oracle, params, est);
    if (i == 0) {
      f0 = sol.f_value;
      g0 = sol.g_value;
    }
    char why[160];
    std::snprintf(why, sizeof(why),
                  "utility moved with the accuracy knob: f=%.6f at eps=0.05 "
                  "vs f=%.6f at eps=%.2f (alpha_min=%.6f)",
                  f0, sol.f_value, params.eps,
                  sol.meta.alpha_min.value_or(0.0));
    g.expect(std::fabs(sol.f_value - f0) <= 1e-6, why);
    std::snprintf(why, sizeof(why),
                  "fairness moved with the accuracy knob: g=%.6f at eps=0.05 "
                  "vs g=%.6f at eps=%.2f",
                  g0, sol.g_value, params.eps);
    g.expect(std::fabs(sol.g_value - g0) <= 1e-6, why);
  }
}

void check_scope_boundary(Gate& g) {
  // Million-node cascade benchmarks, solver-backed optima and real-dataset
  // figures need external data and an ILP solver, so they stay out of scope.
  // The structural contract on exported LP text is what this repo holds:
  // round-trip one model here; the unit suite freezes the byte format.
  auto oracle = testsupport::demo_coverage();
  const std::string text =
      bsm::export_ilp_mc(oracle.instance(), 2, bsm::IlpMode::Bsm, 0.5, 5.0 / 9);
  bsm::LpModel model = bsm::parse_lp(text);
  g.expect(model.maximize, "exported model lost its sense");
  g.expect(!model.objective.empty() && !model.rows.empty() &&
               !model.binaries.empty(),
           "exported model came back empty");
}

}  // namespace

int main() {
  criterion(1, "worked-example runs are exact", 1.0, check_worked_example);
  criterion(2, "heuristics honor their guarantees against brute force", 30.0,
            check_brute_force_concordance);
  criterion(3, "share sweeps trade utility for fairness monotonically", 60.0,
            check_tradeoff_monotonicity);
  criterion(4, "both cascade estimators match exact enumeration", 120.0,
            check_cascade_estimators);
  criterion(5, "the adversarial instance collapses the utility factor", 1.0,
            check_adversarial_collapse);
  criterion(6, "lazy greedy matches the full scan and cli bytes repeat", 120.0,
            check_lazy_parity_and_cli_bytes);
  criterion(7, "the bisection accuracy knob hardly moves the result", 60.0,
            check_eps_insensitivity);
  criterion(8, "paper-scale reruns stay out of scope; lp text round-trips", 5.0,
            check_scope_boundary);

  if (failures == 0) {
    std::printf("acceptance: all 8 criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
