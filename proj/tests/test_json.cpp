#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <stdexcept>

#include "doctest.h"
#include "mpomdp/json_io.hpp"
#include "mpomdp/model.hpp"
#include "support/instances.hpp"

using namespace mpomdp;
using testsupport::near;

namespace {

const char* kCakeText = R"json({
  "actions": ["all-none", "half-half", "none-all"],
  "observations": ["red", "green"],
  "horizon": 1,
  "players": [
    {
      "name": "alice",
      "states": ["cake", "all-none", "half-half", "none-all"],
      "initial": {"cake": 1.0},
      "transition": {
        "cake|all-none": {"all-none": 1.0},
        "cake|half-half": {"half-half": 1.0},
        "cake|none-all": {"none-all": 1.0},
        "all-none|all-none": {"all-none": 1.0},
        "all-none|half-half": {"all-none": 1.0},
        "all-none|none-all": {"all-none": 1.0},
        "half-half|all-none": {"half-half": 1.0},
        "half-half|half-half": {"half-half": 1.0},
        "half-half|none-all": {"half-half": 1.0},
        "none-all|all-none": {"none-all": 1.0},
        "none-all|half-half": {"none-all": 1.0},
        "none-all|none-all": {"none-all": 1.0}
      },
      "observation": {
        "cake": {"red": 0.9, "green": 0.1},
        "all-none": {"red": 0.5, "green": 0.5},
        "half-half": {"red": 0.5, "green": 0.5},
        "none-all": {"red": 0.5, "green": 0.5}
      },
      "utility": {
        "kind": "additive",
        "values": {"cake": 0, "all-none": 30, "half-half": 20, "none-all": 0}
      }
    },
    {
      "name": "bob",
      "states": ["cake", "all-none", "half-half", "none-all"],
      "initial": {"cake": 1.0},
      "transition": {
        "cake|all-none": {"all-none": 1.0},
        "cake|half-half": {"half-half": 1.0},
        "cake|none-all": {"none-all": 1.0},
        "all-none|all-none": {"all-none": 1.0},
        "all-none|half-half": {"all-none": 1.0},
        "all-none|none-all": {"all-none": 1.0},
        "half-half|all-none": {"half-half": 1.0},
        "half-half|half-half": {"half-half": 1.0},
        "half-half|none-all": {"half-half": 1.0},
        "none-all|all-none": {"none-all": 1.0},
        "none-all|half-half": {"none-all": 1.0},
        "none-all|none-all": {"none-all": 1.0}
      },
      "observation": {
        "cake": {"red": 0.1, "green": 0.9},
        "all-none": {"red": 0.5, "green": 0.5},
        "half-half": {"red": 0.5, "green": 0.5},
        "none-all": {"red": 0.5, "green": 0.5}
      },
      "utility": {
        "kind": "additive",
        "values": {"cake": 0, "all-none": 0, "half-half": 20, "none-all": 30}
      },
      "horizon": 1
    }
  ]
})json";

Policy cake_pareto_policy() {
  Policy pi;
  pi.table[{0}] = {1.0, 0.0, 0.0};
  pi.table[{1}] = {0.0, 0.0, 1.0};
  return pi;
}

}  // namespace

TEST_CASE("the cake model parses into a clean compatible set") {
  CompatibleSet set = parse_model_text(kCakeText);
  CHECK(set.actions.labels ==
        std::vector<std::string>{"all-none", "half-half", "none-all"});
  CHECK(set.observations.labels == std::vector<std::string>{"red", "green"});
  CHECK(set.horizon == 1);
  REQUIRE(set.players.size() == 2);
  CHECK(set.players[0].name == "alice");
  CHECK(set.players[1].name == "bob");
  CHECK(near(set.players[0].observation.at("cake").at("red"), 0.9));
  CHECK(near(set.players[1].observation.at("cake").at("red"), 0.1));
  CHECK(set.players[0].utility.kind == UtilitySpec::Kind::additive);
  CHECK(near(set.players[0].utility.values.at("all-none"), 30.0));
  REQUIRE(set.players[1].horizon.has_value());
  CHECK(*set.players[1].horizon == 1);
  CHECK(set.players[0].transition.at({"cake", "half-half"}).at("half-half") == 1.0);
  CHECK(check_compatibility(set).empty());
}

TEST_CASE("tabular utilities parse with comma-separated sequence keys") {
  const char* text = R"json({
    "actions": ["go"],
    "observations": ["o"],
    "horizon": 1,
    "players": [{
      "name": "p",
      "states": ["x", "y"],
      "initial": {"x": 1.0},
      "transition": {"x|go": {"y": 1.0}, "y|go": {"y": 1.0}},
      "observation": {"x": {"o": 1.0}, "y": {"o": 1.0}},
      "utility": {"kind": "tabular", "table": {"x,y": 3.5, "y,y": -1.0}}
    }]
  })json";
  CompatibleSet set = parse_model_text(text);
  const auto& table = set.players[0].utility.table;
  CHECK(set.players[0].utility.kind == UtilitySpec::Kind::tabular);
  CHECK(near(table.at({"x", "y"}), 3.5));
  CHECK(near(table.at({"y", "y"}), -1.0));
}

TEST_CASE("structural defects are parse errors that name the offender") {
  CHECK_THROWS_WITH_AS(parse_model_text("{ nope"), doctest::Contains("invalid JSON"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_model_text("[]"),
                       doctest::Contains("model document must be a JSON object"), ParseError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"actions": ["a"], "player": []})"),
                       doctest::Contains("unknown key \"player\""), ParseError);
  CHECK_THROWS_WITH_AS(parse_model_text(R"({"actions": "a"})"),
                       doctest::Contains("\"actions\" must be an array of strings"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(R"({"actions": ["a"], "observations": ["o"], "horizon": 1.5})"),
      doctest::Contains("\"horizon\" must be an integer"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(
          R"({"actions": ["a"], "observations": ["o"], "horizon": 1, "players": {}})"),
      doctest::Contains("\"players\" must be an array"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(
          R"({"actions": ["a"], "observations": ["o"], "horizon": 1, "players": [4]})"),
      doctest::Contains("player 1 must be an object"), ParseError);
}

TEST_CASE("player-level defects carry the player's name as context") {
  auto player_doc = [](const std::string& body) {
    return std::string(R"({"actions": ["a"], "observations": ["o"], "horizon": 1, "players": [)") +
           body + "]}";
  };
  CHECK_THROWS_WITH_AS(parse_model_text(player_doc(R"({"states": []})")),
                       doctest::Contains("player 1: missing key \"name\""), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_model_text(player_doc(R"({"name": "ada", "observations": {}})")),
      doctest::Contains("player \"ada\": unknown key \"observations\""), ParseError);
  CHECK_THROWS_WITH_AS(parse_model_text(player_doc(R"({"name": "ada"})")),
                       doctest::Contains("player \"ada\": missing key \"states\""), ParseError);

  const std::string bad_transition = player_doc(R"({
    "name": "ada", "states": ["x"], "initial": {"x": 1.0},
    "transition": {"x": {"x": 1.0}},
    "observation": {"x": {"o": 1.0}},
    "utility": {"kind": "additive", "values": {"x": 0}}
  })");
  CHECK_THROWS_WITH_AS(parse_model_text(bad_transition),
                       doctest::Contains("is not of the form \"state|action\""), ParseError);

  const std::string bad_horizon = player_doc(R"({
    "name": "ada", "states": ["x"], "initial": {"x": 1.0},
    "transition": {"x|a": {"x": 1.0}},
    "observation": {"x": {"o": 1.0}},
    "utility": {"kind": "additive", "values": {"x": 0}},
    "horizon": "two"
  })");
  CHECK_THROWS_WITH_AS(parse_model_text(bad_horizon),
                       doctest::Contains("\"horizon\" must be an integer"), ParseError);

  const std::string bad_kind = player_doc(R"({
    "name": "ada", "states": ["x"], "initial": {"x": 1.0},
    "transition": {"x|a": {"x": 1.0}},
    "observation": {"x": {"o": 1.0}},
    "utility": {"kind": "multiplicative", "values": {"x": 0}}
  })");
  CHECK_THROWS_WITH_AS(parse_model_text(bad_kind),
                       doctest::Contains("utility kind must be \"additive\" or \"tabular\""),
                       ParseError);

  const std::string bad_entry = player_doc(R"({
    "name": "ada", "states": ["x"], "initial": {"x": "lots"},
    "transition": {"x|a": {"x": 1.0}},
    "observation": {"x": {"o": 1.0}},
    "utility": {"kind": "additive", "values": {"x": 0}}
  })");
  CHECK_THROWS_WITH_AS(parse_model_text(bad_entry),
                       doctest::Contains("\"initial\" entry \"x\" must be a number"), ParseError);
}

TEST_CASE("policies round-trip through their JSON form") {
  CompatibleSet set = parse_model_text(kCakeText);
  Policy pi = cake_pareto_policy();
  nlohmann::ordered_json doc = policy_to_json(pi, set.actions, set.observations);
  REQUIRE(doc.size() == 2);
  CHECK(doc.contains("red"));
  CHECK(doc.contains("green"));
  CHECK(doc["red"]["all-none"] == 1.0);
  CHECK(doc["red"]["half-half"] == 0.0);
  CHECK(doc["green"]["none-all"] == 1.0);

  Policy back = policy_from_json(doc, set.actions, set.observations);
  CHECK(back.table == pi.table);

  nlohmann::json envelope;
  envelope["metadata"] = {{"weights", {0.5, 0.5}}};
  envelope["policy"] = nlohmann::json::parse(doc.dump());
  Policy from_envelope = policy_from_json(envelope, set.actions, set.observations);
  CHECK(from_envelope.table == pi.table);
}

TEST_CASE("policy rows may omit zero-probability actions") {
  CompatibleSet set = parse_model_text(kCakeText);
  auto doc = nlohmann::json::parse(R"({"red": {"all-none": 1.0}, "green": {"none-all": 1.0}})");
  Policy pi = policy_from_json(doc, set.actions, set.observations);
  CHECK(pi.table.at({0}) == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(pi.table.at({1}) == std::vector<double>{0.0, 0.0, 1.0});
}

TEST_CASE("policy serialization rejects what the format cannot carry") {
  CompatibleSet set = parse_model_text(kCakeText);
  Policy mixture;
  mixture.components = {cake_pareto_policy(), cake_pareto_policy()};
  mixture.coefficients = {0.5, 0.5};
  CHECK_THROWS_WITH_AS(policy_to_json(mixture, set.actions, set.observations),
                       doctest::Contains("mixture"), std::invalid_argument);

  Policy ragged;
  ragged.table[{0}] = {1.0, 0.0};
  CHECK_THROWS_WITH_AS(policy_to_json(ragged, set.actions, set.observations),
                       doctest::Contains("row length"), std::invalid_argument);
}

TEST_CASE("policy parsing distinguishes structure errors from label errors") {
  CompatibleSet set = parse_model_text(kCakeText);
  const auto parse = [&](const char* text) {
    return policy_from_json(nlohmann::json::parse(text), set.actions, set.observations);
  };
  CHECK_THROWS_WITH_AS(policy_from_json(nlohmann::json::parse("[]"), set.actions,
                                        set.observations),
                       doctest::Contains("policy document must be a JSON object"), ParseError);
  CHECK_THROWS_WITH_AS(parse(R"({"red,all-none": {"all-none": 1.0}})"),
                       doctest::Contains("does not alternate"), ParseError);
  CHECK_THROWS_WITH_AS(parse(R"({"red": [1, 0, 0]})"),
                       doctest::Contains("must map to an object"), ParseError);
  CHECK_THROWS_WITH_AS(parse(R"({"blue": {"all-none": 1.0}})"),
                       doctest::Contains("unknown observation label \"blue\""),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse(R"({"red,bake,green": {"all-none": 1.0}})"),
                       doctest::Contains("unknown action label \"bake\""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse(R"({"red": {"bake": 1.0}})"),
                       doctest::Contains("unknown action label \"bake\""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse(R"({"red": {"all-none": "yes"}})"),
                       doctest::Contains("must be a number"), ParseError);
}

TEST_CASE("model files round-trip through disk") {
  namespace fs = std::filesystem;
  const fs::path path =
      fs::temp_directory_path() / ("mpomdp_json_test_" + std::to_string(::getpid()) + ".json");
  write_text_file(path.string(), kCakeText);
  CompatibleSet set = load_model_file(path.string());
  CHECK(set.players.size() == 2);
  CHECK(read_text_file(path.string()) == kCakeText);
  fs::remove(path);

  CHECK_THROWS_WITH_AS(load_model_file(path.string()), doctest::Contains("cannot read file"),
                       ParseError);
  CHECK_THROWS_WITH_AS(write_text_file((path / "sub" / "deep.json").string(), "x"),
                       doctest::Contains("cannot write file"), ParseError);
}

TEST_CASE("numbers print with nine significant digits and integer snapping") {
  CHECK(format_number(27.0) == "27");
  CHECK(format_number(26.999999999999996) == "27");
  CHECK(format_number(-1e-12) == "0");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(13.5) == "13.5");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(0.123456789123) == "0.123456789");
  CHECK(format_number(10000000000.0) == "10000000000");
  CHECK(format_vector({27.0, 0.5}) == "(27, 0.5)");
  CHECK(format_vector({}) == "()");
}

TEST_CASE("number lists accept decimals and exact fractions") {
  auto values = parse_number_list("0.5,1/3,0.25");
  REQUIRE(values.size() == 3);
  CHECK(values[0] == 0.5);
  CHECK(values[1] == 1.0 / 3.0);
  CHECK(values[2] == 0.25);

  auto spaced = parse_number_list(" 0.7 , 3/10 ");
  CHECK(spaced[0] == 0.7);
  CHECK(spaced[1] == 0.3);

  CHECK(parse_number_list("2/4")[0] == 0.5);

  CHECK_THROWS_WITH_AS(parse_number_list("abc"), doctest::Contains("cannot parse number \"abc\""),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_number_list("0.5x"), doctest::Contains("cannot parse number"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_number_list("1/0"), doctest::Contains("zero denominator"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_number_list("0.5,,0.5"), doctest::Contains("empty entry"),
                       std::invalid_argument);
}

TEST_CASE("history labels translate to index sequences") {
  CompatibleSet set = parse_model_text(kCakeText);
  std::vector<int> obs, acts;
  parse_history_labels("red,all-none,green", set.actions, set.observations, obs, acts);
  CHECK(obs == std::vector<int>{0, 1});
  CHECK(acts == std::vector<int>{0});

  parse_history_labels("green", set.actions, set.observations, obs, acts);
  CHECK(obs == std::vector<int>{1});
  CHECK(acts.empty());

  parse_history_labels("", set.actions, set.observations, obs, acts);
  CHECK(obs.empty());
  CHECK(acts.empty());

  CHECK_THROWS_WITH_AS(
      parse_history_labels("blue", set.actions, set.observations, obs, acts),
      doctest::Contains("unknown observation label \"blue\""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_history_labels("red,bake", set.actions, set.observations, obs, acts),
      doctest::Contains("unknown action label \"bake\""), std::invalid_argument);
}
