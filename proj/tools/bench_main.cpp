// Compares the serial reference implementations against the OpenMP-parallel
// kernels on two fixed workloads: a frontier sweep (independent solves per
// grid weight) and brute-force deterministic policy evaluation. Both paths
// must produce identical results; the bench verifies that while timing them.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "mpomdp/model.hpp"
#include "mpomdp/oracle.hpp"
#include "mpomdp/parallel.hpp"
#include "mpomdp/pareto.hpp"

namespace {

using mpomdp::CompatibleSet;
using mpomdp::Execution;
using mpomdp::PlayerOutlook;
using mpomdp::UtilitySpec;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

PlayerOutlook frontier_player(int which) {
  PlayerOutlook p;
  p.name = which == 0 ? "optimist" : "skeptic";
  p.states = {"low", "mid", "high"};
  if (which == 0) {
    p.initial = {{"low", 0.5}, {"mid", 0.3}, {"high", 0.2}};
    p.transition[{"low", "hold"}] = {{"low", 0.7}, {"mid", 0.2}, {"high", 0.1}};
    p.transition[{"low", "push"}] = {{"low", 0.2}, {"mid", 0.5}, {"high", 0.3}};
    p.transition[{"low", "probe"}] = {{"low", 0.5}, {"mid", 0.3}, {"high", 0.2}};
    p.transition[{"mid", "hold"}] = {{"low", 0.3}, {"mid", 0.4}, {"high", 0.3}};
    p.transition[{"mid", "push"}] = {{"low", 0.1}, {"mid", 0.3}, {"high", 0.6}};
    p.transition[{"mid", "probe"}] = {{"low", 0.25}, {"mid", 0.5}, {"high", 0.25}};
    p.transition[{"high", "hold"}] = {{"low", 0.1}, {"mid", 0.3}, {"high", 0.6}};
    p.transition[{"high", "push"}] = {{"low", 0.05}, {"mid", 0.25}, {"high", 0.7}};
    p.transition[{"high", "probe"}] = {{"low", 0.2}, {"mid", 0.2}, {"high", 0.6}};
    p.observation["low"] = {{"tick", 0.8}, {"tock", 0.2}};
    p.observation["mid"] = {{"tick", 0.5}, {"tock", 0.5}};
    p.observation["high"] = {{"tick", 0.15}, {"tock", 0.85}};
    p.utility.values = {{"low", 0.0}, {"mid", 1.0}, {"high", 3.0}};
  } else {
    p.initial = {{"low", 0.3}, {"mid", 0.4}, {"high", 0.3}};
    p.transition[{"low", "hold"}] = {{"low", 0.6}, {"mid", 0.3}, {"high", 0.1}};
    p.transition[{"low", "push"}] = {{"low", 0.3}, {"mid", 0.4}, {"high", 0.3}};
    p.transition[{"low", "probe"}] = {{"low", 0.4}, {"mid", 0.4}, {"high", 0.2}};
    p.transition[{"mid", "hold"}] = {{"low", 0.2}, {"mid", 0.5}, {"high", 0.3}};
    p.transition[{"mid", "push"}] = {{"low", 0.15}, {"mid", 0.25}, {"high", 0.6}};
    p.transition[{"mid", "probe"}] = {{"low", 0.3}, {"mid", 0.4}, {"high", 0.3}};
    p.transition[{"high", "hold"}] = {{"low", 0.15}, {"mid", 0.25}, {"high", 0.6}};
    p.transition[{"high", "push"}] = {{"low", 0.1}, {"mid", 0.2}, {"high", 0.7}};
    p.transition[{"high", "probe"}] = {{"low", 0.25}, {"mid", 0.25}, {"high", 0.5}};
    p.observation["low"] = {{"tick", 0.6}, {"tock", 0.4}};
    p.observation["mid"] = {{"tick", 0.45}, {"tock", 0.55}};
    p.observation["high"] = {{"tick", 0.3}, {"tock", 0.7}};
    p.utility.values = {{"low", 2.0}, {"mid", 1.0}, {"high", 0.0}};
  }
  p.utility.kind = UtilitySpec::Kind::additive;
  return p;
}

CompatibleSet frontier_instance() {
  CompatibleSet set;
  set.actions.labels = {"hold", "push", "probe"};
  set.observations.labels = {"tick", "tock"};
  set.horizon = 3;
  set.players = {frontier_player(0), frontier_player(1)};
  return set;
}

// Two actions, three observations, horizon 2: 21 history keys, 2^21 =
// 2,097,152 deterministic policies — enough work to spread across threads.
CompatibleSet policies_instance() {
  CompatibleSet set;
  set.actions.labels = {"hold", "push"};
  set.observations.labels = {"tick", "tock", "hum"};
  set.horizon = 2;
  for (int which = 0; which < 2; ++which) {
    PlayerOutlook p = frontier_player(which);
    std::map<std::pair<std::string, std::string>, std::map<std::string, double>> trimmed;
    for (const auto& [key, row] : p.transition)
      if (key.second != "probe") trimmed[key] = row;
    p.transition = std::move(trimmed);
    if (which == 0) {
      p.observation["low"] = {{"tick", 0.5}, {"tock", 0.3}, {"hum", 0.2}};
      p.observation["mid"] = {{"tick", 0.2}, {"tock", 0.5}, {"hum", 0.3}};
      p.observation["high"] = {{"tick", 0.1}, {"tock", 0.3}, {"hum", 0.6}};
    } else {
      p.observation["low"] = {{"tick", 0.4}, {"tock", 0.4}, {"hum", 0.2}};
      p.observation["mid"] = {{"tick", 0.3}, {"tock", 0.3}, {"hum", 0.4}};
      p.observation["high"] = {{"tick", 0.2}, {"tock", 0.2}, {"hum", 0.6}};
    }
    set.players.push_back(std::move(p));
  }
  return set;
}

struct PolicySummary {
  double checksum = 0.0;
  double best_equal_weights = 0.0;
  std::size_t count = 0;
};

PolicySummary summarize(const std::vector<std::vector<double>>& values) {
  PolicySummary s;
  s.count = values.size();
  s.best_equal_weights = -1e300;
  for (const auto& v : values) {
    s.checksum += v[0] + 2.0 * v[1];
    s.best_equal_weights = std::max(s.best_equal_weights, 0.5 * v[0] + 0.5 * v[1]);
  }
  return s;
}

void print_timing(const char* label, double serial_ms, double parallel_ms) {
  std::cout << "  serial:   " << serial_ms << " ms\n";
  std::cout << "  parallel: " << parallel_ms << " ms\n";
  std::cout << "  speedup:  " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "x ("
            << label << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel benchmark"};
  int grid = 151;
  bool skip_frontier = false, skip_policies = false;
  app.add_option("--grid", grid, "frontier sweep grid size (default 151)");
  app.add_flag("--skip-frontier", skip_frontier, "skip the frontier workload");
  app.add_flag("--skip-policies", skip_policies, "skip the policy evaluation workload");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP; both paths run serially)\n";
#endif

  if (!skip_frontier) {
    CompatibleSet set = frontier_instance();
    std::cout << "\nfrontier sweep: 3 states, 3 actions, 2 observations, horizon 3, grid "
              << grid << "\n";
    double t0 = now_ms();
    auto serial = mpomdp::sweep_frontier(set, grid, Execution::serial);
    double t1 = now_ms();
    auto parallel = mpomdp::sweep_frontier(set, grid, Execution::parallel);
    double t2 = now_ms();

    bool identical = serial.size() == parallel.size();
    double max_diff = 0.0;
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
      for (std::size_t j = 0; j < serial[i].values.size(); ++j)
        max_diff = std::max(max_diff, std::abs(serial[i].values[j] - parallel[i].values[j]));
    print_timing("frontier", t1 - t0, t2 - t1);
    std::cout << "  points:   " << serial.size() << " vs " << parallel.size()
              << ", max value diff " << max_diff << "\n";
    if (!identical || max_diff > 0.0) {
      std::cout << "MISMATCH between serial and parallel frontier\n";
      return 1;
    }
  }

  if (!skip_policies) {
    CompatibleSet set = policies_instance();
    std::cout << "\ndeterministic policy evaluation: 2097152 policies, horizon 2\n";
    const std::uint64_t cap = 3'000'000;
    double t0 = now_ms();
    PolicySummary serial;
    {
      auto values = mpomdp::evaluate_deterministic_policies(set, cap, Execution::serial);
      serial = summarize(values);
    }
    double t1 = now_ms();
    PolicySummary parallel;
    {
      auto values = mpomdp::evaluate_deterministic_policies(set, cap, Execution::parallel);
      parallel = summarize(values);
    }
    double t2 = now_ms();

    print_timing("policy evaluation", t1 - t0, t2 - t1);
    std::cout << "  best 0.5/0.5 value: " << serial.best_equal_weights << " vs "
              << parallel.best_equal_weights << "\n";
    std::cout << "  checksum: " << serial.checksum << " vs " << parallel.checksum << "\n";
    if (serial.count != parallel.count || serial.checksum != parallel.checksum ||
        serial.best_equal_weights != parallel.best_equal_weights) {
      std::cout << "MISMATCH between serial and parallel evaluation\n";
      return 1;
    }
  }

  std::cout << "\nserial and parallel paths agree\n";
  return 0;
}
