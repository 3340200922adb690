#pragma once

#include <string>

#include "json.hpp"
#include "ncup/harness.hpp"
#include "ncup/twobox.hpp"

namespace ncup {

using ordered_json = nlohmann::ordered_json;

// Cayley-table file: { "order": n, "table": [[...]], "labels": [...]? }
FiniteGroup group_from_json(const nlohmann::json& j);
ordered_json group_to_json(const FiniteGroup& g);

// Action file: { "group": <builtin string or cayley object>, "points": n,
//               "perms": [[...], ...] }
PermutationAction action_from_json(const nlohmann::json& j);

// Element literal: { "algebra": tag, "side": "plus"|"minus", "data": ... }
// with minus-side group elements optionally as { "coeffs": {"g": [re,im]} }.
ordered_json element_to_json(const TwoBoxPair& pair, const AlgebraElement& x);
AlgebraElement element_from_json(const TwoBoxPair& pair, const nlohmann::json& j);

// Model specs: "group:cyclic:6", "group:@cayley.json", "spin:4",
// "fixedpoint:cyclic:3-regular", "fixedpoint:trivial:4", "fixedpoint:@action.json".
TwoBoxPair make_model(const std::string& spec);

SuiteConfig config_from_json(const nlohmann::json& j);
ordered_json config_to_json(const SuiteConfig& c);

ordered_json report_to_json(const SuiteConfig& config,
                            const std::vector<CheckReport>& reports);
std::string report_to_csv(const std::vector<CheckReport>& reports);

std::string fourier_matrix_csv(const TwoBoxPair& pair, bool from_plus);

}  // namespace ncup
