#pragma once

#include <string>

#include <json.hpp>

#include "fermirw/scale_factor.hpp"

namespace fermirw {

/// Model specification schema:
///   {"kind": "power_law", "alpha": 0.5}
///   {"kind": "lambda_fluid", "lambda": 3.0, "gamma": 1.0, "A": 1.0}
///   {"kind": "sinh"}
///   {"kind": "log"}
///   {"kind": "tabulated", "samples": [[t, a], ...]}
/// Throws std::invalid_argument on malformed input.
ScaleFactorModel model_from_json(const nlohmann::json& spec);
ScaleFactorModel model_from_json_string(const std::string& text);

nlohmann::ordered_json model_to_json(const ScaleFactorModel& model);

} // namespace fermirw
