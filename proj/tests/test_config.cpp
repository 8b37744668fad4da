#include <doctest.h>

#include <nlohmann/json.hpp>

#include "deco/config.hpp"
#include "deco/report.hpp"
#include "helpers.hpp"

using namespace deco;
using testutil::rel_close;

namespace {

nlohmann::json minimal_neuron_config() {
    return nlohmann::json::parse(R"({
      "scenario": "neuron",
      "parameters": {
        "membrane_thickness": {"value": 8, "unit": "nm"},
        "diameter": {"value": 10, "unit": "um"},
        "axon_length": {"value": 10, "unit": "cm"},
        "bare_fraction": 1e-3,
        "resting_potential": {"value": -0.07, "unit": "V"},
        "firing_potential": {"value": 0.03, "unit": "V"},
        "temperature": {"value": 310, "unit": "K"},
        "ion_concentration": 2e-4,
        "water_number_density": {"value": 3.3214652259e28, "unit": "1/m^3"},
        "probe_ion_mass": {"value": 23, "unit": "m_p"},
        "probe_ion_charge": {"value": 1, "unit": "e"},
        "water_mass": {"value": 18, "unit": "m_p"},
        "water_dipole_moment": {"value": 1.85, "unit": "Debye"}
      },
      "tau_dyn": {"value": 1, "unit": "ms"}
    })");
}

}  // namespace

TEST_CASE("parsing the standard neuron configuration") {
    const ScenarioConfig config = parse_config(minimal_neuron_config());
    CHECK(config.kind == ScenarioKind::neuron);
    const auto& s = std::get<NeuronScenario>(config.scenario);
    CHECK(rel_close(s.geometry.membrane_thickness.value(), 8e-9, 1e-12));
    CHECK(rel_close(s.geometry.diameter.value(), 10e-6, 1e-12));
    CHECK(rel_close(s.geometry.axon_length.value(), 0.10, 1e-12));
    CHECK(s.ion_count_override.has_value() == false);
}

TEST_CASE("unit conversions in config values") {
    const auto& c = constants();
    const ScenarioConfig config = parse_config(minimal_neuron_config());
    const auto& s = std::get<NeuronScenario>(config.scenario);
    CHECK(rel_close(s.probe.mass.value(), 23.0 * c.proton_mass.value(), 1e-12));
    CHECK(rel_close(s.probe.charge.value(), c.electron_charge.value(), 1e-12));
    CHECK(rel_close(s.water_dipole_moment.value(), 1.85 * 3.335640952e-30, 1e-12));
    CHECK(rel_close(config.tau_dyn->value(), 1e-3, 1e-12));
}

TEST_CASE("unknown keys are rejected with the field path") {
    nlohmann::json doc = minimal_neuron_config();
    doc["parameters"]["membrane_thicknes"] = 1.0;
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "$.parameters.membrane_thicknes");
    }

    nlohmann::json top = minimal_neuron_config();
    top["surprise"] = 1;
    CHECK_THROWS_AS(parse_config(top), ConfigError);
}

TEST_CASE("type and unit violations are rejected with paths") {
    nlohmann::json doc = minimal_neuron_config();
    doc["parameters"]["bare_fraction"] = "large";
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "$.parameters.bare_fraction");
    }

    doc = minimal_neuron_config();
    doc["parameters"]["membrane_thickness"] = {{"value", 8}, {"unit", "ms"}};
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "$.parameters.membrane_thickness");
    }

    doc = minimal_neuron_config();
    doc["parameters"]["membrane_thickness"] = {{"value", 8}, {"unit", "furlong"}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = minimal_neuron_config();
    doc["parameters"].erase("temperature");
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = minimal_neuron_config();
    doc["parameters"]["membrane_thickness"] = 8.0;  // bare number for a length
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("physical validation failures are config errors") {
    nlohmann::json doc = minimal_neuron_config();
    doc["parameters"]["bare_fraction"] = 1.5;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = minimal_neuron_config();
    doc["parameters"]["firing_potential"] = {{"value", -0.08}, {"unit", "V"}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = minimal_neuron_config();
    doc["parameters"]["ion_count_override"] = 0.2;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("defaults round-trip through serialization idempotently") {
    for (ScenarioKind kind : {ScenarioKind::neuron, ScenarioKind::microtubule,
                              ScenarioKind::colloid, ScenarioKind::custom}) {
        const ScenarioConfig config = default_config(kind);
        const nlohmann::ordered_json first = normalized_config_json(config);
        const ScenarioConfig reparsed = parse_config(first);
        const nlohmann::ordered_json second = normalized_config_json(reparsed);
        CHECK(first == second);
    }
}

TEST_CASE("mmol/l parses as a number density") {
    nlohmann::json doc = minimal_neuron_config();
    // 140 mmol/l of potassium-like ions, as a density.
    doc["parameters"]["water_number_density"] = {{"value", 140.0}, {"unit", "mmol/l"}};
    const ScenarioConfig config = parse_config(doc);
    const auto& s = std::get<NeuronScenario>(config.scenario);
    CHECK(rel_close(s.water_number_density.value(), 140.0 * 6.02214076e23, 1e-12));
}

TEST_CASE("default neuron report has the three expected mechanisms") {
    const Report report = run_scenario(default_config(ScenarioKind::neuron));
    REQUIRE(report.mechanisms.size() == 3);
    CHECK(report.mechanisms[0].environment_label == "Colliding ion");
    CHECK(report.mechanisms[1].environment_label == "Colliding H2O");
    CHECK(report.mechanisms[2].environment_label == "Nearby ion");
    CHECK(rel_close(report.mechanisms[0].timescale.value(), 8.3707615779e-20, 1e-9));
    CHECK(rel_close(report.mechanisms[1].timescale.value(), 3.6591450449e-21, 1e-9));
    CHECK(rel_close(report.mechanisms[2].timescale.value(), 4.8225328065e-19, 1e-9));

    REQUIRE(report.classification.has_value());
    CHECK(report.classification->regime == Regime::classical);
    CHECK(rel_close(report.classification->tau_dec.value(), 3.6591450449e-21, 1e-9));
}

TEST_CASE("standard table rows fall within a decade of the reference values") {
    const Report report = standard_table();
    REQUIRE(report.mechanisms.size() == 4);
    const double reference[] = {1e-20, 1e-20, 1e-19, 1e-13};
    for (int i = 0; i < 4; ++i)
        CHECK(testutil::in_decade_of(report.mechanisms[i].timescale.value(), reference[i]));
    CHECK(report.mechanisms[3].object_label == "Microtubule");
    CHECK(report.mechanisms[3].environment_label == "Distant ion");
}

TEST_CASE("reports render deterministically") {
    const Report a = standard_table();
    const Report b = standard_table();
    CHECK(render_json(a) == render_json(b));
    CHECK(render_text(a) == render_text(b));
    CHECK(render_text(a).find("Neuron") != std::string::npos);
    CHECK(render_json(a).find("\"formula\"") != std::string::npos);
}

TEST_CASE("colloid and custom scenarios run end to end") {
    const Report colloid = run_scenario(default_config(ScenarioKind::colloid));
    REQUIRE(colloid.mechanisms.size() == 1);
    CHECK(rel_close(colloid.mechanisms[0].timescale.value(), 1e-12, 1e-12));
    CHECK(colloid.mechanisms[0].intermediates.contains("tau_diss_s"));

    const Report custom = run_scenario(default_config(ScenarioKind::custom));
    REQUIRE(custom.mechanisms.size() == 2);
    CHECK(custom.mechanisms[0].mechanism == "charged-scatterer collisions");
}

TEST_CASE("theta policy override changes the tidal row only") {
    ScenarioConfig config = default_config(ScenarioKind::neuron);
    const Report drop = run_scenario(config);
    config.theta_policy = ThetaPolicy::worst;
    const Report worst = run_scenario(config);
    CHECK(rel_close(worst.mechanisms[2].timescale.value(),
                    drop.mechanisms[2].timescale.value() / 2.0, 1e-12));
    CHECK(rel_close(worst.mechanisms[0].timescale.value(),
                    drop.mechanisms[0].timescale.value(), 1e-12));
}
