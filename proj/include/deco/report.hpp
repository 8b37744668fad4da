#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deco/config.hpp"
#include "deco/scenarios.hpp"

namespace deco {

/// One decoherence channel of a scenario: which system, which environment,
/// the resulting timescale, and the formula identifier it came from
/// (see README for the formula registry).
struct MechanismResult {
    std::string object_label;
    std::string environment_label;
    std::string mechanism;
    std::string formula;
    Quantity timescale;                     // s
    nlohmann::ordered_json intermediates;   // named SI values (cross section, rate, ...)
};

struct Report {
    std::string constants_version;
    nlohmann::ordered_json scenario_echo;
    std::vector<MechanismResult> mechanisms;
    std::optional<SystemClassification> classification;
};

/// Evaluates every decoherence mechanism of the configured scenario and
/// classifies it when tau_dyn is given (tau_dec = fastest mechanism).
Report run_scenario(const ScenarioConfig& config);

/// The four-row default table: three neuron mechanisms plus the
/// microtubule distant-ion row, all from default_config inputs.
Report standard_table(ThetaPolicy policy = ThetaPolicy::drop);

/// Aligned fixed-width text; timescales shown with two significant figures.
std::string render_text(const Report& report);

/// Stable-key-order JSON (byte-deterministic for identical inputs).
std::string render_json(const Report& report);

}  // namespace deco
