#include "mpomdp/json_io.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace mpomdp {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  if (context.empty()) throw ParseError(message);
  throw ParseError(context + ": " + message);
}

void check_known_keys(const json& object, const std::vector<std::string>& allowed,
                      const std::string& context) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (const auto& key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(context, "unknown key \"" + it.key() + "\"");
  }
}

const json& require_key(const json& object, const std::string& key, const std::string& context) {
  auto it = object.find(key);
  if (it == object.end()) fail(context, "missing key \"" + key + "\"");
  return *it;
}

double as_number(const json& value, const std::string& what, const std::string& context) {
  if (!value.is_number()) fail(context, what + " must be a number");
  return value.get<double>();
}

std::vector<std::string> as_string_array(const json& value, const std::string& what,
                                         const std::string& context) {
  if (!value.is_array()) fail(context, what + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string()) fail(context, what + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::map<std::string, double> as_distribution(const json& value, const std::string& what,
                                              const std::string& context) {
  if (!value.is_object()) fail(context, what + " must be an object of label -> number");
  std::map<std::string, double> out;
  for (auto it = value.begin(); it != value.end(); ++it)
    out[it.key()] = as_number(*it, what + " entry \"" + it.key() + "\"", context);
  return out;
}

std::vector<std::string> split(const std::string& text, char delimiter) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(delimiter, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

UtilitySpec parse_utility(const json& value, const std::string& context) {
  if (!value.is_object()) fail(context, "\"utility\" must be an object");
  const json& kind_json = require_key(value, "kind", context);
  if (!kind_json.is_string()) fail(context, "utility \"kind\" must be a string");
  const std::string kind = kind_json.get<std::string>();
  UtilitySpec spec;
  if (kind == "additive") {
    check_known_keys(value, {"kind", "values"}, context);
    spec.kind = UtilitySpec::Kind::additive;
    spec.values = as_distribution(require_key(value, "values", context), "utility \"values\"",
                                  context);
  } else if (kind == "tabular") {
    check_known_keys(value, {"kind", "table"}, context);
    spec.kind = UtilitySpec::Kind::tabular;
    const json& table = require_key(value, "table", context);
    if (!table.is_object()) fail(context, "utility \"table\" must be an object");
    for (auto it = table.begin(); it != table.end(); ++it) {
      double v = as_number(*it, "utility table entry \"" + it.key() + "\"", context);
      spec.table[split(it.key(), ',')] = v;
    }
  } else {
    fail(context, "utility kind must be \"additive\" or \"tabular\", got \"" + kind + "\"");
  }
  return spec;
}

PlayerOutlook parse_player(const json& value, std::size_t index) {
  std::string context = "player " + std::to_string(index + 1);
  if (!value.is_object()) fail("", context + " must be an object");
  auto name_it = value.find("name");
  if (name_it == value.end()) fail(context, "missing key \"name\"");
  if (!name_it->is_string()) fail(context, "\"name\" must be a string");
  PlayerOutlook player;
  player.name = name_it->get<std::string>();
  if (!player.name.empty()) context = "player \"" + player.name + "\"";

  check_known_keys(value,
                   {"name", "states", "initial", "transition", "observation", "utility",
                    "horizon"},
                   context);
  player.states = as_string_array(require_key(value, "states", context), "\"states\"", context);
  player.initial =
      as_distribution(require_key(value, "initial", context), "\"initial\"", context);

  const json& transition = require_key(value, "transition", context);
  if (!transition.is_object()) fail(context, "\"transition\" must be an object");
  for (auto it = transition.begin(); it != transition.end(); ++it) {
    const std::string& key = it.key();
    std::size_t bar = key.find('|');
    if (bar == std::string::npos)
      fail(context, "transition key \"" + key + "\" is not of the form \"state|action\"");
    std::pair<std::string, std::string> state_action(key.substr(0, bar), key.substr(bar + 1));
    player.transition[state_action] =
        as_distribution(*it, "transition row \"" + key + "\"", context);
  }

  const json& observation = require_key(value, "observation", context);
  if (!observation.is_object()) fail(context, "\"observation\" must be an object");
  for (auto it = observation.begin(); it != observation.end(); ++it)
    player.observation[it.key()] =
        as_distribution(*it, "observation row \"" + it.key() + "\"", context);

  player.utility = parse_utility(require_key(value, "utility", context), context);

  auto horizon_it = value.find("horizon");
  if (horizon_it != value.end()) {
    if (!horizon_it->is_number_integer()) fail(context, "\"horizon\" must be an integer");
    player.horizon = horizon_it->get<int>();
  }
  return player;
}

std::string trimmed(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  std::size_t last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

double parse_plain_number(const std::string& token) {
  std::size_t consumed = 0;
  double value = 0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number \"" + token + "\"");
  }
  if (consumed != token.size())
    throw std::invalid_argument("cannot parse number \"" + token + "\"");
  return value;
}

}  // namespace

CompatibleSet parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ParseError(std::string("invalid JSON: ") + error.what());
  }
  if (!doc.is_object()) fail("", "model document must be a JSON object");
  check_known_keys(doc, {"actions", "observations", "horizon", "players"}, "");

  CompatibleSet set;
  set.actions.labels = as_string_array(require_key(doc, "actions", ""), "\"actions\"", "");
  set.observations.labels =
      as_string_array(require_key(doc, "observations", ""), "\"observations\"", "");

  const json& horizon = require_key(doc, "horizon", "");
  if (!horizon.is_number_integer()) fail("", "\"horizon\" must be an integer");
  set.horizon = horizon.get<int>();

  const json& players = require_key(doc, "players", "");
  if (!players.is_array()) fail("", "\"players\" must be an array");
  for (std::size_t i = 0; i < players.size(); ++i)
    set.players.push_back(parse_player(players[i], i));
  return set;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read file " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file " + path);
  out << text;
  out.flush();
  if (!out) throw ParseError("cannot write file " + path);
}

CompatibleSet load_model_file(const std::string& path) {
  return parse_model_text(read_text_file(path));
}

nlohmann::ordered_json policy_to_json(const Policy& policy, const ActionSet& actions,
                                      const ObservationSet& observations) {
  if (policy.is_mixture())
    throw std::invalid_argument("cannot serialize a mixture policy as a table");
  ordered_json rows = ordered_json::object();
  for (const auto& [key, row] : policy.table) {
    if (static_cast<int>(row.size()) != actions.size())
      throw std::invalid_argument("policy row length does not match the action set");
    ordered_json entry = ordered_json::object();
    for (int a = 0; a < actions.size(); ++a)
      entry[actions.labels[static_cast<std::size_t>(a)]] = row[static_cast<std::size_t>(a)];
    rows[history_label(key, actions, observations)] = entry;
  }
  return rows;
}

Policy policy_from_json(const nlohmann::json& doc, const ActionSet& actions,
                        const ObservationSet& observations) {
  if (!doc.is_object()) throw ParseError("policy document must be a JSON object");
  const json* rows = &doc;
  if (doc.contains("policy")) {
    // Envelope form written by `solve --out`.
    rows = &doc.at("policy");
    if (!rows->is_object()) throw ParseError("\"policy\" must be an object");
  }
  Policy policy;
  for (auto it = rows->begin(); it != rows->end(); ++it) {
    std::vector<std::string> tokens = split(it.key(), ',');
    if (tokens.size() % 2 == 0)
      throw ParseError("history key \"" + it.key() +
                       "\" does not alternate observation,action,... ending on an observation");
    std::vector<int> key;
    key.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i % 2 == 0) {
        int o = observations.index_of(tokens[i]);
        if (o < 0)
          throw std::invalid_argument("unknown observation label \"" + tokens[i] +
                                      "\" in history \"" + it.key() + "\"");
        key.push_back(o);
      } else {
        int a = actions.index_of(tokens[i]);
        if (a < 0)
          throw std::invalid_argument("unknown action label \"" + tokens[i] +
                                      "\" in history \"" + it.key() + "\"");
        key.push_back(a);
      }
    }
    if (!it->is_object())
      throw ParseError("history \"" + it.key() + "\" must map to an object action -> number");
    std::vector<double> row(static_cast<std::size_t>(actions.size()), 0.0);
    for (auto action_it = it->begin(); action_it != it->end(); ++action_it) {
      int a = actions.index_of(action_it.key());
      if (a < 0)
        throw std::invalid_argument("unknown action label \"" + action_it.key() +
                                    "\" in the row for history \"" + it.key() + "\"");
      row[static_cast<std::size_t>(a)] =
          as_number(*action_it, "probability of \"" + action_it.key() + "\"",
                    "history \"" + it.key() + "\"");
    }
    if (!policy.table.emplace(std::move(key), std::move(row)).second)
      throw std::invalid_argument("duplicate history \"" + it.key() + "\"");
  }
  return policy;
}

std::string format_number(double v) {
  const double snapped = std::round(v);
  if (std::isfinite(v) && std::abs(v - snapped) <= kTolerance) {
    if (snapped == 0.0) return "0";
    std::ostringstream out;
    out << std::fixed << std::setprecision(0) << snapped;
    return out.str();
  }
  std::ostringstream out;
  out << std::setprecision(9) << v;
  return out.str();
}

std::string format_vector(const std::vector<double>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_number(values[i]);
  }
  out += ")";
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& raw : split(text, ',')) {
    std::string token = trimmed(raw);
    if (token.empty()) throw std::invalid_argument("empty entry in number list \"" + text + "\"");
    std::size_t slash = token.find('/');
    if (slash == std::string::npos) {
      out.push_back(parse_plain_number(token));
      continue;
    }
    double numerator = parse_plain_number(trimmed(token.substr(0, slash)));
    double denominator = parse_plain_number(trimmed(token.substr(slash + 1)));
    if (denominator == 0.0)
      throw std::invalid_argument("zero denominator in \"" + token + "\"");
    out.push_back(numerator / denominator);
  }
  return out;
}

void parse_history_labels(const std::string& text, const ActionSet& actions,
                          const ObservationSet& observations, std::vector<int>& obs_out,
                          std::vector<int>& act_out) {
  obs_out.clear();
  act_out.clear();
  if (text.empty()) return;
  std::vector<std::string> tokens = split(text, ',');
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 2 == 0) {
      int o = observations.index_of(tokens[i]);
      if (o < 0) throw std::invalid_argument("unknown observation label \"" + tokens[i] + "\"");
      obs_out.push_back(o);
    } else {
      int a = actions.index_of(tokens[i]);
      if (a < 0) throw std::invalid_argument("unknown action label \"" + tokens[i] + "\"");
      act_out.push_back(a);
    }
  }
}

}  // namespace mpomdp
