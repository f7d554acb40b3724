#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mpomdp/model.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

// Unreadable or structurally malformed input: bad JSON, wrong types, unknown
// keys, malformed composite keys. Content-level defects (non-normalized rows,
// unknown labels, incompatibility) are not parse errors; they surface through
// validation instead.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CompatibleSet parse_model_text(const std::string& text);
CompatibleSet load_model_file(const std::string& path);

std::string read_text_file(const std::string& path);   // throws ParseError
void write_text_file(const std::string& path, const std::string& text);  // throws ParseError

// History table keyed "o1,a1,o2,..." with one action->probability object per
// row; actions appear in canonical order. Mixtures are not serialized.
nlohmann::ordered_json policy_to_json(const Policy& policy, const ActionSet& actions,
                                      const ObservationSet& observations);
Policy policy_from_json(const nlohmann::json& doc, const ActionSet& actions,
                        const ObservationSet& observations);

// Numbers on standard output: 9 significant digits, values within 1e-9 of an
// integer printed as that integer.
std::string format_number(double v);
std::string format_vector(const std::vector<double>& values);

// "0.5,1/3,0.25" -> {0.5, 1/3, 0.25}; fractions are evaluated exactly.
std::vector<double> parse_number_list(const std::string& text);

// "red,all-none,green" -> observation/action index sequences.
void parse_history_labels(const std::string& text, const ActionSet& actions,
                          const ObservationSet& observations, std::vector<int>& obs_out,
                          std::vector<int>& act_out);

}  // namespace mpomdp
