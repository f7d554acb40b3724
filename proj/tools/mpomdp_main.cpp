// mpomdp: exact finite-horizon planning for k players with differing beliefs.
//
// Subcommands: validate, solve, frontier, trace, naive, compare-naive,
// oracle-check. Exit codes: 0 success, 2 domain/input error, 3 unreadable or
// unparseable file. All data files are JSON; stdout is human-readable unless
// --json is given.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpomdp/json_io.hpp"
#include "mpomdp/mixture.hpp"
#include "mpomdp/model.hpp"
#include "mpomdp/naive.hpp"
#include "mpomdp/oracle.hpp"
#include "mpomdp/pareto.hpp"
#include "mpomdp/policy.hpp"
#include "mpomdp/probability.hpp"
#include "mpomdp/solver.hpp"

namespace {

using mpomdp::format_number;
using mpomdp::format_vector;
using nlohmann::ordered_json;

mpomdp::WeightVector parse_weights_arg(const std::string& text, std::size_t players) {
  std::vector<double> values = mpomdp::parse_number_list(text);
  if (values.size() != players)
    throw std::invalid_argument("expected " + std::to_string(players) + " weights, got " +
                                std::to_string(values.size()));
  double sum = 0.0;
  for (double v : values) {
    if (v < -1e-12) throw std::invalid_argument("weights must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("weights sum to " + format_number(sum) + ", expected 1");
  if (std::abs(sum - 1.0) > mpomdp::kTolerance)
    std::cerr << "warning: weights sum to " << format_number(sum) << "; renormalizing\n";
  for (double& v : values) v /= sum;
  return mpomdp::WeightVector{values};
}

std::vector<double> player_values(const mpomdp::CompatibleSet& set,
                                  const mpomdp::Policy& policy) {
  std::vector<double> values;
  for (const auto& compiled : mpomdp::compile_players(set))
    values.push_back(mpomdp::policy_value(compiled, policy));
  return values;
}

void print_player_values(const mpomdp::CompatibleSet& set, const std::vector<double>& values) {
  for (std::size_t j = 0; j < values.size(); ++j)
    std::cout << "player " << set.players[j].name << ": " << format_number(values[j]) << "\n";
}

ordered_json values_json(const mpomdp::CompatibleSet& set, const std::vector<double>& values) {
  ordered_json players = ordered_json::array();
  for (const auto& p : set.players) players.push_back(p.name);
  ordered_json doc;
  doc["players"] = players;
  doc["values"] = values;
  return doc;
}

// "out.json" -> "out.policies.json"; no ".json" suffix -> plain append.
std::string companion_path(const std::string& out_path) {
  const std::string suffix = ".json";
  if (out_path.size() > suffix.size() &&
      out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out_path.substr(0, out_path.size() - suffix.size()) + ".policies.json";
  return out_path + ".policies.json";
}

int run_validate(const std::string& file, bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  std::vector<std::string> violations = mpomdp::check_compatibility(set);
  if (json) {
    ordered_json doc;
    doc["ok"] = violations.empty();
    doc["violations"] = violations;
    std::cout << doc.dump(2) << "\n";
  } else if (violations.empty()) {
    std::cout << "OK\n";
  } else {
    for (const auto& v : violations) std::cout << v << "\n";
  }
  return violations.empty() ? 0 : 2;
}

int run_solve(const std::string& file, const std::string& weights_text, const std::string& out,
              bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  mpomdp::WeightVector weights = parse_weights_arg(weights_text, set.players.size());
  mpomdp::Policy policy = mpomdp::solve_pareto(set, weights);
  std::vector<double> values = player_values(set, policy);
  double mixture = mpomdp::mixture_value(set, weights, policy);

  if (!out.empty()) {
    ordered_json metadata;
    metadata["weights"] = weights.weights;
    metadata["route"] = policy.metadata;
    ordered_json names = ordered_json::array();
    for (const auto& p : set.players) names.push_back(p.name);
    metadata["players"] = names;
    metadata["values"] = values;
    ordered_json envelope;
    envelope["metadata"] = metadata;
    envelope["policy"] = mpomdp::policy_to_json(policy, set.actions, set.observations);
    mpomdp::write_text_file(out, envelope.dump(2) + "\n");
  }

  if (json) {
    ordered_json doc = values_json(set, values);
    doc["mixture_value"] = mixture;
    doc["policy"] = mpomdp::policy_to_json(policy, set.actions, set.observations);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_player_values(set, values);
    std::cout << "mixture value: " << format_number(mixture) << "\n";
  }
  return 0;
}

int run_frontier(const std::string& file, int grid, const std::string& out, bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  std::vector<mpomdp::FrontierPoint> points = mpomdp::sweep_frontier(set, grid);

  ordered_json listing = ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    ordered_json entry;
    entry["weights"] = points[i].weights.weights;
    entry["values"] = points[i].values;
    entry["policy_id"] = i;
    listing.push_back(entry);
  }

  if (!out.empty()) {
    mpomdp::write_text_file(out, listing.dump(2) + "\n");
    ordered_json policies = ordered_json::array();
    for (const auto& point : points)
      policies.push_back(mpomdp::policy_to_json(point.policy, set.actions, set.observations));
    mpomdp::write_text_file(companion_path(out), policies.dump(2) + "\n");
  }

  if (json) {
    std::cout << listing.dump(2) << "\n";
  } else {
    for (const auto& point : points)
      std::cout << "w=" << format_vector(point.weights.weights)
                << " values=" << format_vector(point.values) << "\n";
  }
  return 0;
}

int run_trace(const std::string& file, const std::string& weights_text,
              const std::string& history, bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  mpomdp::WeightVector weights = parse_weights_arg(weights_text, set.players.size());
  std::vector<int> observations, actions;
  mpomdp::parse_history_labels(history, set.actions, set.observations, observations, actions);
  mpomdp::PriorityTrace trace = mpomdp::priority_trace(set, weights, observations, actions);

  if (json) {
    ordered_json steps = ordered_json::array();
    for (const auto& step : trace.steps) {
      ordered_json entry;
      entry["raw"] = step.raw;
      if (step.normalizable)
        entry["normalized"] = step.normalized;
      else
        entry["normalized"] = nullptr;
      steps.push_back(entry);
    }
    ordered_json doc;
    doc["steps"] = steps;
    std::cout << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& step = trace.steps[i];
      std::cout << "step " << i << ": raw " << format_vector(step.raw) << " normalized ";
      if (step.normalizable)
        std::cout << format_vector(step.normalized) << "\n";
      else
        std::cout << "(undefined)\n";
    }
  }
  return 0;
}

void print_policy_rows(const mpomdp::CompatibleSet& set, const mpomdp::Policy& policy) {
  for (const auto& [key, row] : policy.table) {
    std::cout << "history " << mpomdp::history_label(key, set.actions, set.observations)
              << ": ";
    // deterministic rows print the chosen action, anything else the full row
    int chosen = -1;
    int support = 0;
    for (std::size_t a = 0; a < row.size(); ++a)
      if (row[a] > 1e-12) {
        ++support;
        chosen = static_cast<int>(a);
      }
    if (support == 1) {
      std::cout << set.actions.labels[static_cast<std::size_t>(chosen)] << "\n";
    } else {
      std::cout << format_vector(row) << "\n";
    }
  }
}

int run_naive(const std::string& file, const std::string& r_text, bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  std::vector<double> r_values = mpomdp::parse_number_list(r_text);
  if (r_values.size() != 1) throw std::invalid_argument("--r takes a single number");
  const double r = r_values[0];
  mpomdp::Policy policy = mpomdp::solve_naive(set, r);
  std::vector<double> values = player_values(set, policy);

  if (json) {
    ordered_json doc = values_json(set, values);
    doc["r"] = r;
    doc["policy"] = mpomdp::policy_to_json(policy, set.actions, set.observations);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_policy_rows(set, policy);
    print_player_values(set, values);
  }
  return 0;
}

int run_compare_naive(const std::string& file, const std::string& grid_text,
                      const std::string& reference_path, bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  std::vector<double> r_grid = mpomdp::parse_number_list(grid_text);

  mpomdp::Policy reference;
  if (reference_path.empty()) {
    std::vector<double> equal(set.players.size(), 1.0 / static_cast<double>(set.players.size()));
    reference = mpomdp::solve_pareto(set, mpomdp::WeightVector{equal});
  } else {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(mpomdp::read_text_file(reference_path));
    } catch (const nlohmann::json::parse_error& error) {
      throw mpomdp::ParseError(std::string("invalid JSON: ") + error.what());
    }
    reference = mpomdp::policy_from_json(doc, set.actions, set.observations);
    auto violations = mpomdp::validate_policy(reference, set.observations.size(),
                                              set.actions.size(), set.horizon);
    if (!violations.empty())
      throw std::invalid_argument("reference policy invalid: " + violations.front());
  }

  mpomdp::NaiveComparison comparison = mpomdp::compare_naive(set, r_grid, reference);

  if (json) {
    ordered_json listing = ordered_json::array();
    for (const auto& entry : comparison.entries) {
      ordered_json row;
      row["r"] = entry.r;
      row["values"] = entry.naive_values;
      row["verdict"] = entry.strictly_worse ? "strictly-worse" : "not-worse";
      listing.push_back(row);
    }
    std::cout << listing.dump(2) << "\n";
  } else {
    for (const auto& entry : comparison.entries)
      std::cout << "r=" << format_number(entry.r) << " naive=" << format_vector(entry.naive_values)
                << " reference=" << format_vector(entry.reference_values)
                << " verdict=" << (entry.strictly_worse ? "strictly-worse" : "not-worse") << "\n";
    std::cout << "flagged " << comparison.flagged << " of " << comparison.entries.size() << "\n";
  }
  return 0;
}

int run_oracle_check(const std::string& file, const std::string& weights_text, bool json) {
  mpomdp::CompatibleSet set = mpomdp::load_model_file(file);
  mpomdp::WeightVector weights = parse_weights_arg(weights_text, set.players.size());
  double oracle = mpomdp::best_weighted_value(set, weights);
  mpomdp::Policy policy = mpomdp::solve_pareto(set, weights);
  double solver = mpomdp::mixture_value(set, weights, policy);
  bool pass = std::abs(oracle - solver) <= mpomdp::kTolerance;

  if (json) {
    ordered_json doc;
    doc["oracle_maximum"] = oracle;
    doc["solver_value"] = solver;
    doc["pass"] = pass;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "oracle maximum: " << format_number(oracle) << "\n";
    std::cout << "solver value: " << format_number(solver) << "\n";
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Pareto-optimal sequential planning for players with differing beliefs"};
  app.require_subcommand(1);

  std::string file, weights_text, out_path, history_text, r_text, reference_path;
  std::string grid_r_text = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  int grid = 11;
  bool json_validate = false, json_solve = false, json_frontier = false, json_trace = false,
       json_naive = false, json_compare = false, json_oracle = false;

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a model file for defects");
  validate_cmd->add_option("file", file, "model file")->required();
  validate_cmd->add_flag("--json", json_validate, "structured output");

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Compute the Pareto-optimal policy for given weights");
  solve_cmd->add_option("file", file, "model file")->required();
  solve_cmd->add_option("--weights", weights_text, "comma-separated player weights, sum 1")
      ->required();
  solve_cmd->add_option("--out", out_path, "write the policy to this file");
  solve_cmd->add_flag("--json", json_solve, "structured output");

  CLI::App* frontier_cmd =
      app.add_subcommand("frontier", "Sweep the weight simplex and report the frontier");
  frontier_cmd->add_option("file", file, "model file")->required();
  frontier_cmd->add_option("--grid", grid, "points per simplex edge (>= 2)");
  frontier_cmd->add_option("--out", out_path, "write the frontier to this file");
  frontier_cmd->add_flag("--json", json_frontier, "structured output");

  CLI::App* trace_cmd =
      app.add_subcommand("trace", "Per-step effective priorities along a history");
  trace_cmd->add_option("file", file, "model file")->required();
  trace_cmd->add_option("--weights", weights_text, "comma-separated player weights, sum 1")
      ->required();
  trace_cmd->add_option("--history", history_text, "history \"o1,a1,o2,...\"")->required();
  trace_cmd->add_flag("--json", json_trace, "structured output");

  CLI::App* naive_cmd =
      app.add_subcommand("naive", "Fixed-weight aggregation baseline (two players)");
  naive_cmd->add_option("file", file, "model file")->required();
  naive_cmd->add_option("--r", r_text, "weight of player 1 in [0, 1]; fractions allowed")
      ->required();
  naive_cmd->add_flag("--json", json_naive, "structured output");

  CLI::App* compare_cmd = app.add_subcommand(
      "compare-naive", "Compare the naive baseline against a reference policy over an r grid");
  compare_cmd->add_option("file", file, "model file")->required();
  compare_cmd->add_option("--grid", grid_r_text, "comma-separated r values; fractions allowed");
  compare_cmd->add_option("--reference", reference_path,
                          "reference policy file (default: equal-weights solve)");
  compare_cmd->add_flag("--json", json_compare, "structured output");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-check", "Compare the solver against brute-force policy enumeration");
  oracle_cmd->add_option("file", file, "model file")->required();
  oracle_cmd->add_option("--weights", weights_text, "comma-separated player weights, sum 1")
      ->required();
  oracle_cmd->add_flag("--json", json_oracle, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate_cmd)) return run_validate(file, json_validate);
    if (app.got_subcommand(solve_cmd)) return run_solve(file, weights_text, out_path, json_solve);
    if (app.got_subcommand(frontier_cmd)) return run_frontier(file, grid, out_path, json_frontier);
    if (app.got_subcommand(trace_cmd)) return run_trace(file, weights_text, history_text, json_trace);
    if (app.got_subcommand(naive_cmd)) return run_naive(file, r_text, json_naive);
    if (app.got_subcommand(compare_cmd))
      return run_compare_naive(file, grid_r_text, reference_path, json_compare);
    if (app.got_subcommand(oracle_cmd)) return run_oracle_check(file, weights_text, json_oracle);
  } catch (const mpomdp::ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
