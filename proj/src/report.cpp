#include "deco/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace deco {

namespace {

std::string sig2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1e", v);
    return buf;
}

MechanismResult collision_row(const std::string& object_label,
                              const std::string& environment_label,
                              const CollisionDecoherenceSpec& spec) {
    const Quantity tau = collision_decoherence_timescale(spec);
    const Quantity rate = scattering_rate(spec.probe, spec.environment);
    const Quantity mu = reduced_mass(spec.probe.mass, spec.environment.mass);
    const Quantity v = thermal_speed(mu, spec.environment.temperature);
    const Quantity sigma =
        spec.environment.kind == ScattererKind::charged
            ? cross_section_coulomb(mu, v, spec.probe.charge, spec.environment.coupling)
            : cross_section_dipole(mu, v, spec.probe.charge, spec.environment.coupling);
    const Quantity lambda =
        de_broglie_wavelength(spec.environment.mass, spec.environment.temperature);

    MechanismResult row;
    row.object_label = object_label;
    row.environment_label = environment_label;
    row.mechanism = spec.environment.kind == ScattererKind::charged
                        ? "charged-scatterer collisions"
                        : "dipolar-scatterer collisions";
    row.formula = "inverse-collision-rate";
    row.timescale = tau;
    row.intermediates["cross_section_m2"] = sigma.value();
    row.intermediates["scattering_rate_per_s"] = rate.value();
    row.intermediates["relative_speed_m_per_s"] = v.value();
    row.intermediates["scatterer_wavelength_m"] = lambda.value();
    row.intermediates["separation_to_wavelength"] = (spec.separation / lambda).value();
    row.intermediates["ion_count"] = spec.ion_count;
    row.intermediates["order_estimate_s"] =
        collision_timescale_order_estimate(spec).value();
    return row;
}

MechanismResult nearby_ion_row(const std::string& object_label, double ion_count,
                               const Quantity& density, const Quantity& separation,
                               const Quantity& ion_mass, const Quantity& temperature,
                               ThetaPolicy policy) {
    const Quantity tau = nearest_ion_timescale(ion_count, density, separation, ion_mass,
                                               temperature, std::nullopt, policy);
    MechanismResult row;
    row.object_label = object_label;
    row.environment_label = "Nearby ion";
    row.mechanism = "nearest-ion tidal coupling";
    row.formula = "nearest-ion-quadratic-exponent";
    row.timescale = tau;
    row.intermediates["nearest_ion_distance_m"] = std::pow(density.value(), -1.0 / 3.0);
    row.intermediates["environment_spread_m"] =
        minimal_thermal_spread(ion_mass, temperature).value();
    row.intermediates["ion_count"] = ion_count;
    row.intermediates["theta_factor"] = theta_policy_factor(policy);
    return row;
}

void append_neuron_rows(std::vector<MechanismResult>& rows, const NeuronScenario& s,
                        ThetaPolicy policy) {
    const double n_ions = s.ion_count();
    const Quantity ion_density = s.ion_concentration * s.water_number_density;

    CollisionDecoherenceSpec ion_ion{s.geometry.membrane_thickness, n_ions, s.probe,
                                     ScattererPopulation::charged(ion_density, s.probe.mass,
                                                                  s.temperature,
                                                                  s.probe.charge)};
    rows.push_back(collision_row("Neuron", "Colliding ion", ion_ion));

    CollisionDecoherenceSpec ion_water{
        s.geometry.membrane_thickness, n_ions, s.probe,
        ScattererPopulation::dipolar(s.water_number_density, s.water_mass, s.temperature,
                                     s.water_dipole_moment)};
    rows.push_back(collision_row("Neuron", "Colliding H2O", ion_water));

    rows.push_back(nearby_ion_row("Neuron", n_ions, ion_density,
                                  s.geometry.membrane_thickness, s.probe.mass, s.temperature,
                                  policy));
}

MechanismResult microtubule_row(const MicrotubuleScenario& s) {
    const Quantity tau = microtubule_timescale(s.kink, s.temperature, s.ion_mass);
    MechanismResult row;
    row.object_label = "Microtubule";
    row.environment_label = "Distant ion";
    row.mechanism = "nearest-ion tidal coupling";
    row.formula = "nearest-ion-quadratic-exponent-saturated";
    row.timescale = tau;
    const double spacing = std::pow(s.kink.environment_ion_density.value(), -1.0 / 3.0);
    row.intermediates["nearest_ion_distance_m"] = s.kink.tube_diameter.value() + spacing;
    row.intermediates["environment_spread_m"] =
        minimal_thermal_spread(s.ion_mass, s.temperature).value();
    row.intermediates["effective_charges"] =
        (s.kink.kink_charge / constants().electron_charge).value();
    return row;
}

}  // namespace

Report run_scenario(const ScenarioConfig& config) {
    Report report;
    report.constants_version = kConstantsVersion;
    report.scenario_echo = normalized_config_json(config);

    std::optional<Quantity> tau_diss = config.tau_diss;
    switch (config.kind) {
        case ScenarioKind::neuron:
            append_neuron_rows(report.mechanisms, std::get<NeuronScenario>(config.scenario),
                               config.theta_policy);
            break;
        case ScenarioKind::microtubule:
            report.mechanisms.push_back(
                microtubule_row(std::get<MicrotubuleScenario>(config.scenario)));
            break;
        case ScenarioKind::colloid: {
            const auto& s = std::get<ColloidScenario>(config.scenario);
            const ColloidTimescales t =
                colloid_estimate(s.grain_mass, s.molecule_mass, s.collision_time);
            MechanismResult row;
            row.object_label = "Colloid grain";
            row.environment_label = "Fluid molecule";
            row.mechanism = "single-collision decoherence";
            row.formula = "colloid-collision-ratio";
            row.timescale = t.tau_dec;
            row.intermediates["tau_diss_s"] = t.tau_diss.value();
            row.intermediates["mass_ratio"] = (s.grain_mass / s.molecule_mass).value();
            report.mechanisms.push_back(row);
            if (!tau_diss) tau_diss = t.tau_diss;
            break;
        }
        case ScenarioKind::custom: {
            const auto& s = std::get<CustomScenario>(config.scenario);
            CollisionDecoherenceSpec spec{s.separation, s.ion_count, s.probe, s.environment};
            const char* env_label =
                s.environment.kind == ScattererKind::charged ? "Colliding ion"
                                                             : "Colliding dipole";
            report.mechanisms.push_back(collision_row("Custom system", env_label, spec));
            if (s.environment.kind == ScattererKind::charged)
                report.mechanisms.push_back(nearby_ion_row(
                    "Custom system", s.ion_count, s.environment.number_density, s.separation,
                    s.environment.mass, s.environment.temperature, config.theta_policy));
            break;
        }
    }

    if (config.tau_dyn && !report.mechanisms.empty()) {
        Quantity tau_dec = report.mechanisms.front().timescale;
        for (const auto& row : report.mechanisms)
            if (row.timescale.value() < tau_dec.value()) tau_dec = row.timescale;
        report.classification =
            tau_diss ? classify(*config.tau_dyn, tau_dec, *tau_diss)
                     : classify(*config.tau_dyn, tau_dec);
    }
    return report;
}

Report standard_table(ThetaPolicy policy) {
    Report report;
    report.constants_version = kConstantsVersion;

    ScenarioConfig neuron = default_config(ScenarioKind::neuron);
    ScenarioConfig microtubule = default_config(ScenarioKind::microtubule);
    neuron.theta_policy = policy;
    microtubule.theta_policy = policy;
    report.scenario_echo = nlohmann::ordered_json{
        {"scenario", "standard-table"},
        {"configs", nlohmann::ordered_json::array({normalized_config_json(neuron),
                                                   normalized_config_json(microtubule)})}};

    append_neuron_rows(report.mechanisms, std::get<NeuronScenario>(neuron.scenario),
                       neuron.theta_policy);
    report.mechanisms.push_back(
        microtubule_row(std::get<MicrotubuleScenario>(microtubule.scenario)));
    return report;
}

std::string render_text(const Report& report) {
    std::ostringstream os;
    os << "Decoherence timescales (constants: " << report.constants_version << ")\n\n";

    constexpr int w_obj = 15, w_env = 17, w_tau = 12, w_mech = 31;
    auto pad = [](const std::string& s, int w) {
        return s.size() >= static_cast<size_t>(w) ? s : s + std::string(w - s.size(), ' ');
    };
    os << pad("Object", w_obj) << pad("Environment", w_env) << pad("tau_dec", w_tau)
       << pad("Mechanism", w_mech) << "Formula\n";
    os << std::string(w_obj + w_env + w_tau + w_mech + 7, '-') << "\n";
    for (const auto& row : report.mechanisms) {
        os << pad(row.object_label, w_obj) << pad(row.environment_label, w_env)
           << pad(sig2(row.timescale.value()) + " s", w_tau) << pad(row.mechanism, w_mech)
           << row.formula << "\n";
    }

    if (report.classification) {
        const auto& c = *report.classification;
        os << "\nClassification: " << regime_name(c.regime)
           << "  (tau_dyn = " << sig2(c.tau_dyn.value())
           << " s, tau_dec = " << sig2(c.tau_dec.value()) << " s, tau_diss = ";
        if (std::isfinite(c.tau_diss.value()))
            os << sig2(c.tau_diss.value()) << " s)";
        else
            os << "none)";
        os << "\n";
    }
    return os.str();
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["tool"] = "taudec";
    doc["constants_version"] = report.constants_version;
    doc["scenario"] = report.scenario_echo;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.mechanisms) {
        nlohmann::ordered_json r;
        r["object"] = row.object_label;
        r["environment"] = row.environment_label;
        r["mechanism"] = row.mechanism;
        r["formula"] = row.formula;
        r["timescale_s"] = row.timescale.value();
        r["timescale_display"] = sig2(row.timescale.value()) + " s";
        r["intermediates"] = row.intermediates;
        rows.push_back(std::move(r));
    }
    doc["mechanisms"] = std::move(rows);
    if (report.classification) {
        const auto& c = *report.classification;
        nlohmann::ordered_json cls;
        cls["regime"] = regime_name(c.regime);
        cls["tau_dyn_s"] = c.tau_dyn.value();
        cls["tau_dec_s"] = c.tau_dec.value();
        if (std::isfinite(c.tau_diss.value()))
            cls["tau_diss_s"] = c.tau_diss.value();
        else
            cls["tau_diss_s"] = nullptr;
        doc["classification"] = std::move(cls);
    } else {
        doc["classification"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

}  // namespace deco
