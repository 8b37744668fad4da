#include "deco/config.hpp"

#include <cmath>
#include <map>
#include <set>

namespace deco {

namespace {

struct UnitEntry {
    Quantity quantity;    // SI value of one unit
    const char* si_name;  // canonical unit this normalizes to
};

const std::map<std::string, UnitEntry>& unit_table() {
    static const std::map<std::string, UnitEntry> table = [] {
        const auto& c = constants();
        std::map<std::string, UnitEntry> t;
        auto put = [&](const char* name, Quantity q, const char* si) {
            t.emplace(name, UnitEntry{q, si});
        };
        put("m", meters(1.0), "m");
        put("cm", meters(1e-2), "m");
        put("mm", meters(1e-3), "m");
        put("um", meters(1e-6), "m");
        put("nm", meters(1e-9), "m");
        put("pm", meters(1e-12), "m");
        put("s", seconds(1.0), "s");
        put("ms", seconds(1e-3), "s");
        put("us", seconds(1e-6), "s");
        put("ns", seconds(1e-9), "s");
        put("ps", seconds(1e-12), "s");
        put("K", kelvin(1.0), "K");
        put("V", volts(1.0), "V");
        put("mV", volts(1e-3), "V");
        put("kg", kilograms(1.0), "kg");
        put("g", kilograms(1e-3), "kg");
        put("m_p", c.proton_mass, "kg");
        put("C", coulombs(1.0), "C");
        put("e", c.electron_charge, "C");
        put("Debye", debyes(1.0), "C m");
        put("D", debyes(1.0), "C m");
        put("C m", Quantity(1.0, kDipoleMoment), "C m");
        put("1/m^3", per_cubic_meter(1.0), "1/m^3");
        put("1/cm^3", per_cubic_meter(1e6), "1/m^3");
        put("1/nm^3", per_cubic_meter(1e27), "1/m^3");
        // Molar concentration as a number density: 1 mmol/l = 1 mol/m^3.
        put("mmol/l", per_cubic_meter(c.avogadro.value()), "1/m^3");
        put("J", joules(1.0), "J");
        put("N", newtons(1.0), "N");
        put("m/s", meters_per_second(1.0), "m/s");
        put("1/s", per_second(1.0), "1/s");
        return t;
    }();
    return table;
}

const char* si_name_for(const Dims& dims) {
    if (dims == kLength) return "m";
    if (dims == kTime) return "s";
    if (dims == kTemperature) return "K";
    if (dims == kVoltage) return "V";
    if (dims == kMass) return "kg";
    if (dims == kCharge) return "C";
    if (dims == kDipoleMoment) return "C m";
    if (dims == kNumberDensity) return "1/m^3";
    if (dims == kEnergy) return "J";
    if (dims == kForce) return "N";
    if (dims == kSpeed) return "m/s";
    if (dims == kRate) return "1/s";
    return nullptr;
}

class FieldReader {
public:
    FieldReader(const nlohmann::json& node, std::string path)
        : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw ConfigError(path_, "expected an object");
    }

    ~FieldReader() = default;

    const nlohmann::json* find(const std::string& key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    const nlohmann::json& require(const std::string& key) {
        const nlohmann::json* p = find(key);
        if (!p) throw ConfigError(path_ + "." + key, "missing required field");
        return *p;
    }

    void reject_unknown() const {
        for (auto it = node_.begin(); it != node_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(path_ + "." + it.key(), "unknown field");
    }

    std::string child_path(const std::string& key) const { return path_ + "." + key; }

private:
    const nlohmann::json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

double parse_number(const nlohmann::json& node, const std::string& path) {
    if (!node.is_number()) throw ConfigError(path, "expected a number");
    return node.get<double>();
}

Quantity parse_quantity(const nlohmann::json& node, const std::string& path,
                        const Dims& expected) {
    if (node.is_number()) {
        if (!(expected == kDimless))
            throw ConfigError(path, "expected {\"value\", \"unit\"} with dimension [" +
                                        expected.str() + "]");
        return Quantity::dimensionless(node.get<double>());
    }
    if (!node.is_object())
        throw ConfigError(path, "expected a number or a {\"value\", \"unit\"} object");
    FieldReader r(node, path);
    const double value = parse_number(r.require("value"), path + ".value");
    const nlohmann::json& unit_node = r.require("unit");
    r.reject_unknown();
    if (!unit_node.is_string()) throw ConfigError(path + ".unit", "expected a string");
    const std::string unit = unit_node.get<std::string>();
    const auto& table = unit_table();
    auto it = table.find(unit);
    if (it == table.end()) throw ConfigError(path + ".unit", "unknown unit '" + unit + "'");
    const Quantity q = value * it->second.quantity;
    if (!(q.dims() == expected))
        throw ConfigError(path, "unit '" + unit + "' has dimension [" + q.dims().str() +
                                    "], expected [" + expected.str() + "]");
    return q;
}

nlohmann::ordered_json quantity_json(const Quantity& q) {
    const char* name = si_name_for(q.dims());
    if (!name) throw DomainError("no canonical unit for dimension [" + q.dims().str() + "]");
    return nlohmann::ordered_json{{"value", q.value()}, {"unit", name}};
}

NeuronScenario parse_neuron(const nlohmann::json& node, const std::string& path) {
    FieldReader r(node, path);
    NeuronScenario s;
    s.geometry.membrane_thickness =
        parse_quantity(r.require("membrane_thickness"), r.child_path("membrane_thickness"),
                       kLength);
    s.geometry.diameter = parse_quantity(r.require("diameter"), r.child_path("diameter"),
                                         kLength);
    s.geometry.axon_length =
        parse_quantity(r.require("axon_length"), r.child_path("axon_length"), kLength);
    s.geometry.bare_fraction =
        parse_number(r.require("bare_fraction"), r.child_path("bare_fraction"));
    s.geometry.resting_potential = parse_quantity(
        r.require("resting_potential"), r.child_path("resting_potential"), kVoltage);
    s.geometry.firing_potential = parse_quantity(
        r.require("firing_potential"), r.child_path("firing_potential"), kVoltage);
    s.temperature = parse_quantity(r.require("temperature"), r.child_path("temperature"),
                                   kTemperature);
    s.ion_concentration =
        parse_number(r.require("ion_concentration"), r.child_path("ion_concentration"));
    s.water_number_density = parse_quantity(
        r.require("water_number_density"), r.child_path("water_number_density"),
        kNumberDensity);
    s.probe.mass = parse_quantity(r.require("probe_ion_mass"), r.child_path("probe_ion_mass"),
                                  kMass);
    s.probe.charge = parse_quantity(r.require("probe_ion_charge"),
                                    r.child_path("probe_ion_charge"), kCharge);
    s.water_mass = parse_quantity(r.require("water_mass"), r.child_path("water_mass"), kMass);
    s.water_dipole_moment = parse_quantity(
        r.require("water_dipole_moment"), r.child_path("water_dipole_moment"), kDipoleMoment);
    if (const auto* n = r.find("ion_count_override")) {
        const double count = parse_number(*n, r.child_path("ion_count_override"));
        if (!(count >= 1.0))
            throw ConfigError(r.child_path("ion_count_override"), "must be >= 1");
        s.ion_count_override = count;
    }
    r.reject_unknown();

    try {
        s.geometry.validate();
        s.probe.validate();
        require_positive(s.temperature, "temperature");
        require_positive(s.water_number_density, "water number density");
        require_positive(s.water_mass, "water mass");
        require_positive(s.water_dipole_moment, "water dipole moment");
        if (!(s.ion_concentration > 0.0)) throw DomainError("ion concentration must be positive");
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    return s;
}

MicrotubuleScenario parse_microtubule(const nlohmann::json& node, const std::string& path) {
    FieldReader r(node, path);
    MicrotubuleScenario s;
    s.kink.tube_diameter =
        parse_quantity(r.require("tube_diameter"), r.child_path("tube_diameter"), kLength);
    s.kink.kink_charge =
        parse_quantity(r.require("kink_charge"), r.child_path("kink_charge"), kCharge);
    s.kink.environment_ion_density =
        parse_quantity(r.require("environment_ion_density"),
                       r.child_path("environment_ion_density"), kNumberDensity);
    s.kink.superposition_span = parse_quantity(
        r.require("superposition_span"), r.child_path("superposition_span"), kLength);
    s.temperature = parse_quantity(r.require("temperature"), r.child_path("temperature"),
                                   kTemperature);
    s.ion_mass = parse_quantity(r.require("environment_ion_mass"),
                                r.child_path("environment_ion_mass"), kMass);
    r.reject_unknown();
    try {
        s.kink.validate();
        require_positive(s.temperature, "temperature");
        require_positive(s.ion_mass, "environment ion mass");
    } catch (const RegimeError&) {
        throw;  // regime guards surface as exit code 3, not config errors
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    return s;
}

ColloidScenario parse_colloid(const nlohmann::json& node, const std::string& path) {
    FieldReader r(node, path);
    ColloidScenario s;
    s.grain_mass = parse_quantity(r.require("grain_mass"), r.child_path("grain_mass"), kMass);
    s.molecule_mass =
        parse_quantity(r.require("molecule_mass"), r.child_path("molecule_mass"), kMass);
    s.collision_time =
        parse_quantity(r.require("collision_time"), r.child_path("collision_time"), kTime);
    r.reject_unknown();
    try {
        colloid_estimate(s.grain_mass, s.molecule_mass, s.collision_time);
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    return s;
}

CustomScenario parse_custom(const nlohmann::json& node, const std::string& path) {
    FieldReader r(node, path);
    CustomScenario s;
    s.ion_count = parse_number(r.require("ion_count"), r.child_path("ion_count"));
    s.separation = parse_quantity(r.require("separation"), r.child_path("separation"), kLength);
    s.probe.mass = parse_quantity(r.require("probe_mass"), r.child_path("probe_mass"), kMass);
    s.probe.charge =
        parse_quantity(r.require("probe_charge"), r.child_path("probe_charge"), kCharge);

    const nlohmann::json& env = r.require("environment");
    FieldReader re(env, r.child_path("environment"));
    const nlohmann::json& kind_node = re.require("kind");
    if (!kind_node.is_string())
        throw ConfigError(re.child_path("kind"), "expected \"charged\" or \"dipolar\"");
    const std::string kind = kind_node.get<std::string>();
    s.environment.number_density = parse_quantity(
        re.require("number_density"), re.child_path("number_density"), kNumberDensity);
    s.environment.mass = parse_quantity(re.require("mass"), re.child_path("mass"), kMass);
    s.environment.temperature =
        parse_quantity(re.require("temperature"), re.child_path("temperature"), kTemperature);
    if (kind == "charged") {
        s.environment.kind = ScattererKind::charged;
        s.environment.coupling =
            parse_quantity(re.require("charge"), re.child_path("charge"), kCharge);
    } else if (kind == "dipolar") {
        s.environment.kind = ScattererKind::dipolar;
        s.environment.coupling = parse_quantity(re.require("dipole_moment"),
                                                re.child_path("dipole_moment"), kDipoleMoment);
    } else {
        throw ConfigError(re.child_path("kind"), "expected \"charged\" or \"dipolar\"");
    }
    re.reject_unknown();
    r.reject_unknown();

    try {
        if (!(s.ion_count >= 1.0)) throw DomainError("ion count must be >= 1");
        require_positive(s.separation, "separation");
        s.probe.validate();
        s.environment.validate();
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    return s;
}

}  // namespace

const char* scenario_kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::neuron: return "neuron";
        case ScenarioKind::microtubule: return "microtubule";
        case ScenarioKind::colloid: return "colloid";
        case ScenarioKind::custom: return "custom";
    }
    return "?";
}

double NeuronScenario::ion_count() const {
    if (ion_count_override.has_value()) return *ion_count_override;
    return neuron_ion_count(geometry);
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
    FieldReader r(doc, "$");
    const nlohmann::json& kind_node = r.require("scenario");
    if (!kind_node.is_string()) throw ConfigError("$.scenario", "expected a string");
    const std::string kind = kind_node.get<std::string>();

    ScenarioConfig config;
    const nlohmann::json& params = r.require("parameters");
    if (kind == "neuron") {
        config.kind = ScenarioKind::neuron;
        config.scenario = parse_neuron(params, "$.parameters");
    } else if (kind == "microtubule") {
        config.kind = ScenarioKind::microtubule;
        config.scenario = parse_microtubule(params, "$.parameters");
    } else if (kind == "colloid") {
        config.kind = ScenarioKind::colloid;
        config.scenario = parse_colloid(params, "$.parameters");
    } else if (kind == "custom") {
        config.kind = ScenarioKind::custom;
        config.scenario = parse_custom(params, "$.parameters");
    } else {
        throw ConfigError("$.scenario", "unknown scenario kind '" + kind + "'");
    }

    if (const auto* n = r.find("tau_dyn")) {
        config.tau_dyn = parse_quantity(*n, "$.tau_dyn", kTime);
        if (!(config.tau_dyn->value() > 0.0)) throw ConfigError("$.tau_dyn", "must be positive");
    }
    if (const auto* n = r.find("tau_diss")) {
        config.tau_diss = parse_quantity(*n, "$.tau_diss", kTime);
        if (!(config.tau_diss->value() > 0.0))
            throw ConfigError("$.tau_diss", "must be positive");
    }
    if (const auto* n = r.find("theta_policy")) {
        if (!n->is_string()) throw ConfigError("$.theta_policy", "expected a string");
        const std::string policy = n->get<std::string>();
        if (policy == "drop")
            config.theta_policy = ThetaPolicy::drop;
        else if (policy == "worst")
            config.theta_policy = ThetaPolicy::worst;
        else if (policy == "best")
            config.theta_policy = ThetaPolicy::best;
        else
            throw ConfigError("$.theta_policy", "expected drop, worst or best");
    }
    r.reject_unknown();
    return config;
}

ScenarioConfig default_config(ScenarioKind kind) {
    const auto& c = constants();
    ScenarioConfig config;
    config.kind = kind;
    switch (kind) {
        case ScenarioKind::neuron: {
            NeuronScenario s;
            s.geometry.membrane_thickness = meters(8e-9);
            s.geometry.diameter = meters(10e-6);
            s.geometry.axon_length = meters(0.10);
            s.geometry.bare_fraction = 1e-3;
            s.geometry.resting_potential = volts(-0.07);
            s.geometry.firing_potential = volts(0.03);
            s.temperature = kelvin(310.0);
            s.ion_concentration = 2e-4;
            // 1 g/cm^3 of water at 18 m_p per molecule.
            s.water_number_density =
                per_cubic_meter(1e3 / (18.0 * c.proton_mass.value()));
            s.probe = ProbeIon::sodium_like();
            s.water_mass = 18.0 * c.proton_mass;
            s.water_dipole_moment = debyes(1.85);
            config.scenario = s;
            config.tau_dyn = seconds(1e-3);
            break;
        }
        case ScenarioKind::microtubule: {
            MicrotubuleScenario s;
            s.kink.tube_diameter = meters(24e-9);
            s.kink.kink_charge = 940.0 * c.electron_charge;
            s.kink.environment_ion_density = per_cubic_meter(1.25e26);  // (2 nm)^-3
            s.kink.superposition_span = meters(250e-9);
            s.temperature = kelvin(310.0);
            s.ion_mass = 23.0 * c.proton_mass;
            config.scenario = s;
            config.tau_dyn = seconds(5e-7);
            break;
        }
        case ScenarioKind::colloid: {
            ColloidScenario s;
            s.grain_mass = kilograms(1e-9);  // 1 ug grain
            s.molecule_mass = 18.0 * c.proton_mass;
            s.collision_time = seconds(1e-12);
            config.scenario = s;
            break;
        }
        case ScenarioKind::custom: {
            CustomScenario s;
            s.ion_count = 1.0;
            s.separation = meters(10e-9);
            s.probe = ProbeIon::sodium_like();
            s.environment = ScattererPopulation::charged(
                per_cubic_meter(6.64e24), 23.0 * c.proton_mass, kelvin(310.0),
                c.electron_charge);
            config.scenario = s;
            break;
        }
    }
    return config;
}

nlohmann::ordered_json normalized_config_json(const ScenarioConfig& config) {
    nlohmann::ordered_json doc;
    doc["scenario"] = scenario_kind_name(config.kind);
    nlohmann::ordered_json p;
    switch (config.kind) {
        case ScenarioKind::neuron: {
            const auto& s = std::get<NeuronScenario>(config.scenario);
            p["membrane_thickness"] = quantity_json(s.geometry.membrane_thickness);
            p["diameter"] = quantity_json(s.geometry.diameter);
            p["axon_length"] = quantity_json(s.geometry.axon_length);
            p["bare_fraction"] = s.geometry.bare_fraction;
            p["resting_potential"] = quantity_json(s.geometry.resting_potential);
            p["firing_potential"] = quantity_json(s.geometry.firing_potential);
            p["temperature"] = quantity_json(s.temperature);
            p["ion_concentration"] = s.ion_concentration;
            p["water_number_density"] = quantity_json(s.water_number_density);
            p["probe_ion_mass"] = quantity_json(s.probe.mass);
            p["probe_ion_charge"] = quantity_json(s.probe.charge);
            p["water_mass"] = quantity_json(s.water_mass);
            p["water_dipole_moment"] = quantity_json(s.water_dipole_moment);
            if (s.ion_count_override) p["ion_count_override"] = *s.ion_count_override;
            break;
        }
        case ScenarioKind::microtubule: {
            const auto& s = std::get<MicrotubuleScenario>(config.scenario);
            p["tube_diameter"] = quantity_json(s.kink.tube_diameter);
            p["kink_charge"] = quantity_json(s.kink.kink_charge);
            p["environment_ion_density"] = quantity_json(s.kink.environment_ion_density);
            p["superposition_span"] = quantity_json(s.kink.superposition_span);
            p["temperature"] = quantity_json(s.temperature);
            p["environment_ion_mass"] = quantity_json(s.ion_mass);
            break;
        }
        case ScenarioKind::colloid: {
            const auto& s = std::get<ColloidScenario>(config.scenario);
            p["grain_mass"] = quantity_json(s.grain_mass);
            p["molecule_mass"] = quantity_json(s.molecule_mass);
            p["collision_time"] = quantity_json(s.collision_time);
            break;
        }
        case ScenarioKind::custom: {
            const auto& s = std::get<CustomScenario>(config.scenario);
            p["ion_count"] = s.ion_count;
            p["separation"] = quantity_json(s.separation);
            p["probe_mass"] = quantity_json(s.probe.mass);
            p["probe_charge"] = quantity_json(s.probe.charge);
            nlohmann::ordered_json env;
            env["kind"] =
                s.environment.kind == ScattererKind::charged ? "charged" : "dipolar";
            env["number_density"] = quantity_json(s.environment.number_density);
            env["mass"] = quantity_json(s.environment.mass);
            env["temperature"] = quantity_json(s.environment.temperature);
            if (s.environment.kind == ScattererKind::charged)
                env["charge"] = quantity_json(s.environment.coupling);
            else
                env["dipole_moment"] = quantity_json(s.environment.coupling);
            p["environment"] = std::move(env);
            break;
        }
    }
    doc["parameters"] = std::move(p);
    if (config.tau_dyn) doc["tau_dyn"] = quantity_json(*config.tau_dyn);
    if (config.tau_diss) doc["tau_diss"] = quantity_json(*config.tau_diss);
    switch (config.theta_policy) {
        case ThetaPolicy::drop: doc["theta_policy"] = "drop"; break;
        case ThetaPolicy::worst: doc["theta_policy"] = "worst"; break;
        case ThetaPolicy::best: doc["theta_policy"] = "best"; break;
    }
    return doc;
}

}  // namespace deco
