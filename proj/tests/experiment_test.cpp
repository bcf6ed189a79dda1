#include <doctest.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsm/experiment.hpp"

using namespace bsm;

namespace {

ExperimentSpec demo_spec() {
  ExperimentSpec spec;
  spec.problem = ExperimentSpec::Problem::Coverage;
  spec.cover_path = FIXTURE_DIR "/demo_cover.tsv";
  spec.groups_path = FIXTURE_DIR "/demo_groups.tsv";
  spec.k = 2;
  spec.eps = 0.1;
  spec.timing = false;
  return spec;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

int field_count(const std::string& line) {
  // Only valid for lines without quoted fields.
  int n = 1;
  for (char ch : line) n += ch == ',';
  return n;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("exactly one instance source is accepted") {
  std::ostringstream sink;
  ExperimentSpec none;
  CHECK_THROWS_AS(build_instance(none), std::invalid_argument);

  ExperimentSpec two_sources = demo_spec();
  two_sources.gen_spec = "hard:blocks=1,alpha=0.1,m=10";
  CHECK_THROWS_AS(build_instance(two_sources), std::invalid_argument);

  ExperimentSpec orphan = demo_spec();
  orphan.groups_path.clear();
  CHECK_THROWS_AS(build_instance(orphan), std::invalid_argument);

  ExperimentSpec facility;
  facility.problem = ExperimentSpec::Problem::Facility;
  facility.gen_spec = "sbm:n=10,props=1,pin=0.5,pout=0.5";
  CHECK_THROWS_AS(build_instance(facility), std::invalid_argument);

  ExperimentSpec influence;
  influence.problem = ExperimentSpec::Problem::Influence;
  influence.gen_spec = "hard:blocks=1,alpha=0.1,m=10";
  CHECK_THROWS_AS(build_instance(influence), std::invalid_argument);
}

TEST_CASE("generator strings are parsed strictly") {
  ExperimentSpec spec;
  auto with_gen = [&](const std::string& g) {
    ExperimentSpec s = spec;
    s.gen_spec = g;
    return s;
  };

  CHECK_THROWS_AS(build_instance(with_gen("nope:n=3")), std::invalid_argument);
  CHECK_THROWS_AS(build_instance(with_gen("sbm:n=10,pin=0.5,pout=0.1")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      build_instance(with_gen("sbm:n=10,props=1,pin=0.5,pout=0.1,zzz=3")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      build_instance(with_gen("sbm:n=ten,props=1,pin=0.5,pout=0.1")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      build_instance(with_gen("sbm:n=10,n=12,props=1,pin=0.5,pout=0.1")),
      std::invalid_argument);
  CHECK_THROWS_AS(build_instance(with_gen("sbm:bare")), std::invalid_argument);
  CHECK_THROWS_AS(build_instance(with_gen("blobs:counts=3,centers=0,sigmas=1")),
                  std::invalid_argument);

  BuiltInstance hard = build_instance(with_gen("hard:blocks=1,alpha=0.1,m=10"));
  CHECK(hard.oracle->item_count() == 2);
  CHECK(hard.oracle->population().user_count() == 10);

  ExperimentSpec blob;
  blob.problem = ExperimentSpec::Problem::Facility;
  blob.gen_spec = "blobs:counts=3/2,centers=0;0/4;0,sigmas=0.5/0.5";
  blob.kernel = Kernel::KMedian;
  BuiltInstance built = build_instance(blob);
  CHECK(built.oracle->item_count() == 5);
  CHECK(built.oracle->population().group_size(0) == 3);
  CHECK(built.oracle->population().group_size(1) == 2);
  CHECK(built.dbar_used > 0.0);

  blob.kernel = Kernel::Rbf;
  CHECK(build_instance(blob).dbar_used == 0.0);
}

TEST_CASE("invalid run parameters are rejected up front") {
  std::ostringstream sink;
  auto broken = [&](auto&& tweak) {
    ExperimentSpec spec = demo_spec();
    tweak(spec);
    CHECK_THROWS_AS(run_sweep(spec, sink), std::invalid_argument);
  };
  broken([](ExperimentSpec& s) { s.format = "xml"; });
  broken([](ExperimentSpec& s) { s.tau = 1.5; });
  broken([](ExperimentSpec& s) { s.eps = 0.0; });
  broken([](ExperimentSpec& s) { s.k = 0; });
  broken([](ExperimentSpec& s) { s.algorithms = {"magic"}; });
  broken([](ExperimentSpec& s) { s.sweep_axis = "gamma"; s.sweep_values = {1.0}; });
  broken([](ExperimentSpec& s) { s.sweep_axis = "tau"; });
  broken([](ExperimentSpec& s) { s.sweep_values = {0.5}; });
  broken([](ExperimentSpec& s) { s.sweep_axis = "tau"; s.sweep_values = {1.5}; });
  broken([](ExperimentSpec& s) { s.sweep_axis = "k"; s.sweep_values = {2.5}; });
  broken([](ExperimentSpec& s) { s.sweep_axis = "eps"; s.sweep_values = {1.0}; });
}

TEST_CASE("a tau sweep over the fixture reproduces the hand-checked rows") {
  ExperimentSpec spec = demo_spec();
  spec.sweep_axis = "tau";
  spec.sweep_values = {0.2, 0.8};
  spec.algorithms = {"greedy", "tsgreedy", "bsm-saturate"};

  std::ostringstream out;
  SweepReport report = run_sweep(spec, out);
  CHECK(report.exit_code == 0);
  REQUIRE(report.rows.size() == 6);

  const auto& greedy = report.rows[0];
  CHECK(greedy.algorithm == "greedy");
  CHECK(greedy.sol.items == std::vector<int>{0, 1});
  CHECK(greedy.sol.f_value == 0.75);
  CHECK(greedy.opt_f_est == 0.75);
  CHECK(greedy.opt_g_est == 5.0 / 9);

  const auto& ts_low = report.rows[1];
  CHECK(ts_low.sol.items == std::vector<int>{2, 0});
  REQUIRE(ts_low.sol.meta.k_prime.has_value());
  CHECK(*ts_low.sol.meta.k_prime == 1);
  CHECK(ts_low.sol.f_value == 0.75 * (7.0 / 9) + 0.25 * (1.0 / 3));
  CHECK(ts_low.sol.g_value == 1.0 / 3);

  const auto& sat_low = report.rows[2];
  CHECK(sat_low.sol.items == std::vector<int>{2, 0});
  REQUIRE(sat_low.sol.meta.alpha_min.has_value());
  CHECK(*sat_low.sol.meta.alpha_min == 0.9375);
  CHECK(*sat_low.sol.meta.alpha_max == 1.0);

  const auto& ts_high = report.rows[4];
  CHECK(ts_high.tau == 0.8);
  CHECK(ts_high.sol.items == std::vector<int>{0, 3});
  CHECK(*ts_high.sol.meta.k_prime == 0);
  CHECK(ts_high.sol.f_value == 7.0 / 12);
  CHECK(ts_high.sol.g_value == 5.0 / 9);

  const auto& sat_high = report.rows[5];
  CHECK(sat_high.sol.items == std::vector<int>{0, 3});
  CHECK(*sat_high.sol.meta.alpha_min == 0.8125);
  CHECK(*sat_high.sol.meta.alpha_max == 0.875);
  CHECK(sat_high.threshold == 0.8 * (5.0 / 9));

  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] ==
        "sweep,value,algorithm,k,tau,eps,status,f,g,group_values,items,"
        "k_prime,alpha_min,alpha_max,opt_f,opt_g,tau_optg,evaluations,error");
  CHECK(lines[1].starts_with(
      "tau,0.2,greedy,2,0.2,0.1,ok,0.75,0,1;0,v1;v2,,,,"
      "0.75,0.555555555556,0.111111111111,"));
  for (const auto& line : lines) CHECK(field_count(line) == 19);
}

TEST_CASE("the timing column is appended last when enabled") {
  ExperimentSpec spec = demo_spec();
  spec.timing = true;
  std::ostringstream out;
  run_sweep(spec, out);
  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].ends_with(",error,wall_ms"));
  for (const auto& line : lines) CHECK(field_count(line) == 20);
}

TEST_CASE("output bytes ignore the worker count and repeat exactly") {
  ExperimentSpec spec = demo_spec();
  spec.sweep_axis = "tau";
  spec.sweep_values = {0.1, 0.3, 0.5, 0.7, 0.9};

  std::ostringstream one, four, again;
  spec.workers = 1;
  run_sweep(spec, one);
  spec.workers = 4;
  run_sweep(spec, four);
  run_sweep(spec, again);
  CHECK(one.str() == four.str());
  CHECK(four.str() == again.str());
  CHECK(lines_of(one.str()).size() == 1 + 5 * 4);
}

TEST_CASE("json rows parse back with the exact run values") {
  ExperimentSpec spec = demo_spec();
  spec.format = "json";
  spec.tau = 0.5;
  spec.algorithms = {"greedy", "brute-force"};

  std::ostringstream out;
  SweepReport report = run_sweep(spec, out);
  CHECK(report.exit_code == 0);
  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);

  auto greedy = nlohmann::json::parse(lines[0]);
  CHECK(greedy.at("algorithm") == "greedy");
  CHECK(greedy.at("sweep") == "");
  CHECK(greedy.at("value").get<double>() == 0.5);
  CHECK(greedy.at("status") == "ok");
  CHECK(greedy.at("f").get<double>() == 0.75);
  CHECK(greedy.at("items") == std::vector<std::string>{"v1", "v2"});
  CHECK(!greedy.contains("k_prime"));
  CHECK(!greedy.contains("alpha_min"));
  CHECK(!greedy.contains("wall_ms"));

  auto exact = nlohmann::json::parse(lines[1]);
  CHECK(exact.at("algorithm") == "brute-force");
  CHECK(exact.at("items") == std::vector<std::string>{"v1", "v3"});
  CHECK(exact.at("g").get<double>() == 1.0 / 3);
  CHECK(exact.at("opt_f").get<double>() == 0.75);
  CHECK(exact.at("opt_g").get<double>() == 5.0 / 9);
  CHECK(exact.at("tau_optg").get<double>() == 0.5 * (5.0 / 9));
}

TEST_CASE("a row failure is recorded without stopping the sweep") {
  ExperimentSpec spec;
  spec.gen_spec = "sbm:n=40,props=1,pin=0.2,pout=0.2";
  spec.k = 15;
  spec.timing = false;
  spec.algorithms = {"brute-force", "greedy"};

  std::ostringstream out;
  SweepReport report = run_sweep(spec, out);
  CHECK(report.exit_code == 2);
  REQUIRE(report.rows.size() == 2);
  CHECK(!report.rows[0].ok);
  CHECK(report.rows[0].error.find("enumeration cap") != std::string::npos);
  CHECK(report.rows[1].ok);

  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].find(",error,") != std::string::npos);
  // The message holds a comma, so the csv field arrives quoted.
  CHECK(lines[1].find("\"C(40, 15) exceeds the enumeration cap\"") !=
        std::string::npos);
}

TEST_CASE("a k sweep at tau zero tracks the plain utility greedy") {
  ExperimentSpec spec = demo_spec();
  spec.tau = 0.0;
  spec.sweep_axis = "k";
  spec.sweep_values = {1.0, 2.0, 3.0};
  spec.algorithms = {"greedy", "tsgreedy"};

  std::ostringstream out;
  SweepReport report = run_sweep(spec, out);
  REQUIRE(report.rows.size() == 6);
  double prev = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto& g = report.rows[2 * i];
    const auto& ts = report.rows[2 * i + 1];
    CHECK(g.k == i + 1);
    CHECK(g.value == double(i + 1));
    CHECK(ts.sol.f_value == g.sol.f_value);
    CHECK(*ts.sol.meta.k_prime == i + 1);
    CHECK(g.sol.f_value >= prev);
    prev = g.sol.f_value;
  }
}

TEST_CASE("an eps sweep repeats one solution until the stop rule coarsens") {
  ExperimentSpec spec;
  spec.gen_spec = "sbm:n=30,props=0.2/0.8,pin=0.1,pout=0.02";
  spec.seed = 66;
  spec.k = 5;
  spec.tau = 0.8;
  spec.timing = false;
  spec.sweep_axis = "eps";
  spec.sweep_values = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  spec.algorithms = {"bsm-saturate"};

  std::ostringstream out;
  SweepReport report = run_sweep(spec, out);
  CHECK(report.exit_code == 0);
  REQUIRE(report.rows.size() == 10);

  const auto& first = report.rows[0];
  CHECK(first.sol.f_value == 0.2 * (3.0 / 6) + 0.8 * (14.0 / 24));
  CHECK(first.sol.g_value == 0.5);
  for (int i = 1; i < 9; ++i) {
    const auto& row = report.rows[i];
    CHECK(row.sol.items == first.sol.items);
    CHECK(row.sol.f_value == first.sol.f_value);
    CHECK(row.sol.g_value == first.sol.g_value);
  }
  // The answer repeats while the brackets behind it do not.
  CHECK(*first.sol.meta.alpha_min == 0.9375);
  CHECK(*report.rows[7].sol.meta.alpha_min == 0.75);

  // At eps 0.5 the first accepted probe already meets the stop rule, and the
  // probe set at 0.5 is a different one.
  const auto& coarse = report.rows[9];
  CHECK(*coarse.sol.meta.alpha_min == 0.5);
  CHECK(coarse.sol.items != first.sol.items);
  CHECK(coarse.sol.f_value == 0.2 * (3.0 / 6) + 0.8 * (10.0 / 24));
  CHECK(coarse.sol.g_value == 10.0 / 24);
}

TEST_CASE("influence sweeps re-evaluate deterministically across workers") {
  ExperimentSpec spec;
  spec.problem = ExperimentSpec::Problem::Influence;
  spec.gen_spec = "sbm:n=12,props=0.5/0.5,pin=0.3,pout=0.1";
  spec.p = 0.2;
  spec.rr_count = 2000;
  spec.mc_reps = 300;
  spec.k = 2;
  spec.tau = 0.5;
  spec.eps = 0.1;
  spec.seed = 5;
  spec.timing = false;
  spec.algorithms = {"greedy", "tsgreedy"};

  std::ostringstream one, three;
  spec.workers = 1;
  SweepReport a = run_sweep(spec, one);
  spec.workers = 3;
  SweepReport b = run_sweep(spec, three);
  CHECK(a.exit_code == 0);
  CHECK(one.str() == three.str());
  for (const auto& row : a.rows) {
    REQUIRE(row.ok);
    CHECK(row.sol.f_value > 0.0);
    CHECK(row.sol.f_value <= 1.0);
    CHECK(row.sol.group_values.size() == 2);
  }
}

TEST_CASE("the single-run report prints estimates and a verdict") {
  ExperimentSpec spec = demo_spec();
  spec.tau = 0.8;
  spec.algorithms = {"tsgreedy"};
  std::ostringstream out;
  CHECK(run_single(spec, out) == 0);
  const std::string text = out.str();
  CHECK(text.find("instance: 4 items, 12 users, 2 groups") != std::string::npos);
  CHECK(text.find("params: k=2 tau=0.8 eps=0.1 seed=1") != std::string::npos);
  CHECK(text.find("estimates: opt_f=0.75 opt_g=0.555555555556 "
                  "threshold=0.444444444444") != std::string::npos);
  CHECK(text.find("tsgreedy: f=0.583333333333 g=0.555555555556 k'=0 "
                  "items=v1;v4") != std::string::npos);
  CHECK(text.find("satisfied: g=0.5556 >= 0.4444") != std::string::npos);

  ExperimentSpec vacuous = demo_spec();
  vacuous.tau = 0.0;
  vacuous.algorithms = {"greedy"};
  std::ostringstream out2;
  CHECK(run_single(vacuous, out2) == 0);
  CHECK(out2.str().find("constraint vacuous") != std::string::npos);

  ExperimentSpec failing;
  failing.gen_spec = "sbm:n=40,props=1,pin=0.2,pout=0.2";
  failing.k = 15;
  failing.algorithms = {"brute-force"};
  std::ostringstream out3;
  CHECK(run_single(failing, out3) == 2);
  CHECK(out3.str().find("brute-force: error") != std::string::npos);
}

}  // TEST_SUITE
