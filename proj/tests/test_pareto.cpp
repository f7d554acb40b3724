#include <random>

#include <stdexcept>

#include "doctest.h"
#include "mpomdp/mixture.hpp"
#include "mpomdp/oracle.hpp"
#include "mpomdp/pareto.hpp"
#include "support/instances.hpp"

using namespace mpomdp;
using testsupport::make_cake_set;
using testsupport::make_identical_set;
using testsupport::near;
using testsupport::random_compatible_pair;

namespace {

bool near_vector(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!near(a[i], b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("dominance requires weak improvement everywhere and strict somewhere") {
  CHECK(dominates({27.0, 27.0}, {20.0, 20.0}));
  CHECK_FALSE(dominates({30.0, 0.0}, {27.0, 27.0}));
  CHECK_FALSE(dominates({27.0, 27.0}, {30.0, 0.0}));
  CHECK_FALSE(dominates({27.0, 27.0}, {27.0, 27.0}));
  CHECK_FALSE(dominates({1.0 + 5e-10, 1.0}, {1.0, 1.0}));  // inside tolerance
  CHECK(dominates({1.0, 2.0}, {1.0, 1.0}));
  CHECK_THROWS_WITH_AS(dominates({1.0, 2.0}, {1.0, 2.0, 3.0}),
                       doctest::Contains("value vectors have lengths 2 and 3"),
                       std::invalid_argument);
}

TEST_CASE("simplex grids enumerate weight vectors in lexicographic order") {
  auto two = simplex_grid(2, 5);
  REQUIRE(two.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(near(two[static_cast<std::size_t>(i)][0], i * 0.25));
    CHECK(near(two[static_cast<std::size_t>(i)][1], 1.0 - i * 0.25));
  }

  auto three = simplex_grid(3, 3);
  REQUIRE(three.size() == 6);
  CHECK(near_vector(three[0], {0.0, 0.0, 1.0}));
  CHECK(near_vector(three[1], {0.0, 0.5, 0.5}));
  CHECK(near_vector(three[2], {0.0, 1.0, 0.0}));
  CHECK(near_vector(three[3], {0.5, 0.0, 0.5}));
  CHECK(near_vector(three[4], {0.5, 0.5, 0.0}));
  CHECK(near_vector(three[5], {1.0, 0.0, 0.0}));
  for (const auto& w : three) {
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(near(sum, 1.0));
  }

  CHECK_THROWS_WITH_AS(simplex_grid(2, 1), doctest::Contains("grid size must be at least 2"),
                       std::invalid_argument);
  CHECK_THROWS_AS(simplex_grid(1, 5), std::invalid_argument);
}

TEST_CASE("a coarse cake sweep finds the three landmark agreements") {
  auto frontier = sweep_frontier(make_cake_set(), 5);
  REQUIRE(frontier.size() == 3);
  CHECK(near_vector(frontier[0].values, {0.0, 30.0}));
  CHECK(near_vector(frontier[1].values, {27.0, 27.0}));
  CHECK(near_vector(frontier[2].values, {30.0, 0.0}));
  // the equal split is first reached at the second grid point
  CHECK(near_vector(frontier[1].weights.weights, {0.25, 0.75}));
}

TEST_CASE("a finer cake sweep exposes the asymmetric agreements too") {
  auto frontier = sweep_frontier(make_cake_set(), 11);
  REQUIRE(frontier.size() == 5);
  const std::vector<std::vector<double>> expected = {
      {0.0, 30.0}, {18.0, 29.0}, {27.0, 27.0}, {29.0, 18.0}, {30.0, 0.0}};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(near_vector(frontier[i].values, expected[i]));

  // first player's value is non-decreasing along the ascending-weight grid
  for (std::size_t i = 1; i < frontier.size(); ++i)
    CHECK(frontier[i].values[0] >= frontier[i - 1].values[0] - 1e-9);

  // returned points are mutually non-dominating
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (std::size_t j = 0; j < frontier.size(); ++j)
      if (i != j) CHECK_FALSE(dominates(frontier[i].values, frontier[j].values));
}

TEST_CASE("swept policies actually achieve their reported values") {
  CompatibleSet set = make_cake_set();
  for (const auto& point : sweep_frontier(set, 11)) {
    auto recomputed = testsupport::values_of(set, point.policy);
    REQUIRE(recomputed.size() == point.values.size());
    for (std::size_t j = 0; j < recomputed.size(); ++j)
      CHECK(near(recomputed[j], point.values[j]));
  }
}

TEST_CASE("identical players collapse the frontier to one point") {
  auto frontier = sweep_frontier(make_identical_set(), 7);
  REQUIRE(frontier.size() == 1);
  CHECK(near(frontier[0].values[0], frontier[0].values[1]));
}

TEST_CASE("every swept point is weighted-optimal against the brute-force frontier") {
  std::mt19937 rng(90125);
  for (int trial = 0; trial < 12; ++trial) {
    CompatibleSet set = random_compatible_pair(rng);
    auto frontier = sweep_frontier(set, 7);
    auto oracle = brute_force_frontier(set);
    REQUIRE(!oracle.empty());
    for (const auto& point : frontier) {
      double swept = 0.0;
      for (std::size_t j = 0; j < point.values.size(); ++j)
        swept += point.weights.weights[j] * point.values[j];
      double best = -1e300;
      for (const auto& candidate : oracle) {
        double weighted = 0.0;
        for (std::size_t j = 0; j < candidate.values.size(); ++j)
          weighted += point.weights.weights[j] * candidate.values[j];
        best = std::max(best, weighted);
      }
      // dedup rounds value vectors at 1e-9, so allow a hair more slack here
      CHECK(near(swept, best, 1e-7));
    }
  }
}

TEST_CASE("serial and parallel sweeps agree exactly") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 4; ++trial) {
    CompatibleSet set = random_compatible_pair(rng);
    auto serial = sweep_frontier(set, 9, Execution::serial);
    auto parallel = sweep_frontier(set, 9, Execution::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].weights.weights == parallel[i].weights.weights);
      CHECK(serial[i].values == parallel[i].values);
      CHECK(serial[i].policy.table == parallel[i].policy.table);
    }
  }

  auto cake_serial = sweep_frontier(make_cake_set(), 11, Execution::serial);
  auto cake_parallel = sweep_frontier(make_cake_set(), 11, Execution::parallel);
  REQUIRE(cake_serial.size() == cake_parallel.size());
  for (std::size_t i = 0; i < cake_serial.size(); ++i)
    CHECK(cake_serial[i].values == cake_parallel[i].values);
}

TEST_CASE("sweep_frontier rejects incompatible sets") {
  CompatibleSet set = make_cake_set();
  set.players.pop_back();
  CHECK_THROWS_WITH_AS(sweep_frontier(set, 5), doctest::Contains("at least 2 players"),
                       std::invalid_argument);
}
