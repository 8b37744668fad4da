#pragma once

#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "deco/scattering.hpp"
#include "deco/scenarios.hpp"
#include "deco/tidal.hpp"
#include "deco/units.hpp"

namespace deco {

enum class ScenarioKind { neuron, microtubule, colloid, custom };

const char* scenario_kind_name(ScenarioKind kind);

struct NeuronScenario {
    NeuronGeometry geometry;
    Quantity temperature;            // K
    double ion_concentration = 0.0;  // eta, relative to water
    Quantity water_number_density;   // 1/m^3
    ProbeIon probe;                  // the superposed ion species
    Quantity water_mass;             // kg
    Quantity water_dipole_moment;    // C m
    std::optional<double> ion_count_override;

    double ion_count() const;
};

struct MicrotubuleScenario {
    MicrotubuleKink kink;
    Quantity temperature;  // K
    Quantity ion_mass;     // kg, environment ions
};

struct ColloidScenario {
    Quantity grain_mass;
    Quantity molecule_mass;
    Quantity collision_time;
};

struct CustomScenario {
    double ion_count = 1.0;
    Quantity separation;
    ProbeIon probe;
    ScattererPopulation environment;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::neuron;
    std::variant<NeuronScenario, MicrotubuleScenario, ColloidScenario, CustomScenario> scenario;
    std::optional<Quantity> tau_dyn;
    std::optional<Quantity> tau_diss;
    ThetaPolicy theta_policy = ThetaPolicy::drop;
};

/// Parses and validates a configuration document.  Unknown keys are
/// rejected; every quantity is dimension-checked on load.  Throws
/// ConfigError carrying the JSON path of the offending field.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Built-in defaults for each scenario kind (the standard-table inputs).
ScenarioConfig default_config(ScenarioKind kind);

/// Canonical JSON form with every quantity normalized to SI base units.
/// parse(normalize(parse(doc))) == parse(doc).
nlohmann::ordered_json normalized_config_json(const ScenarioConfig& config);

}  // namespace deco
