#include "deco/scenarios.hpp"

#include <cmath>
#include <limits>

#include "deco/tidal.hpp"

namespace deco {

void NeuronGeometry::validate() const {
    require_dims(membrane_thickness, kLength, "membrane thickness");
    require_dims(diameter, kLength, "diameter");
    require_dims(axon_length, kLength, "axon length");
    require_dims(resting_potential, kVoltage, "resting potential");
    require_dims(firing_potential, kVoltage, "firing potential");
    require_positive(membrane_thickness, "membrane thickness");
    require_positive(diameter, "diameter");
    require_positive(axon_length, "axon length");
    if (!(bare_fraction > 0.0 && bare_fraction <= 1.0))
        throw DomainError("bare fraction must be in (0, 1]");
    if (!(firing_potential.value() > resting_potential.value()))
        throw DomainError("firing potential must exceed resting potential");
}

double neuron_ion_count(const NeuronGeometry& g) {
    g.validate();
    const auto& c = constants();
    const Quantity area = M_PI * g.diameter * g.axon_length * g.bare_fraction;
    const Quantity n = area * c.vacuum_permittivity *
                       (g.firing_potential - g.resting_potential) /
                       (c.electron_charge * g.membrane_thickness);
    require_dims(n, kDimless, "neuron ion count");
    return n.value();
}

long long neuron_ion_count_nearest(const NeuronGeometry& g) {
    return std::llround(neuron_ion_count(g));
}

Quantity KinkProfile::polarization(const Quantity& x) const {
    require_dims(x, kLength, "kink profile: position");
    const double u = ((x - center) / width).value();
    return -1.0 * amplitude * std::tanh(u);
}

Quantity KinkProfile::polarization_gradient(const Quantity& x) const {
    require_dims(x, kLength, "kink profile: position");
    const double u = ((x - center) / width).value();
    const double sech = 1.0 / std::cosh(u);
    return -1.0 * (amplitude / width) * (sech * sech);
}

Quantity KinkProfile::net_charge(double half_range_widths) const {
    // Q = -integral p'(x) dx, adaptive Simpson on the smooth gradient.
    const double w = width.value();
    const double x0 = center.value();
    const double lo = x0 - half_range_widths * w;
    const double hi = x0 + half_range_widths * w;
    auto f = [&](double x) { return -polarization_gradient(meters(x)).value(); };

    int n = 64;
    auto simpson = [&](int panels) {
        const double h = (hi - lo) / panels;
        double s = f(lo) + f(hi);
        for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    double prev = simpson(n);
    for (int iter = 0; iter < 12; ++iter) {
        n *= 2;
        const double cur = simpson(n);
        if (std::abs(cur - prev) <= 1e-12 * std::abs(cur)) return {cur, kCharge};
        prev = cur;
    }
    return {prev, kCharge};
}

KinkProfile kink_profile(const Quantity& amplitude, const Quantity& center,
                         const Quantity& width) {
    require_dims(amplitude, kCharge, "kink amplitude");
    require_dims(center, kLength, "kink center");
    require_dims(width, kLength, "kink width");
    require_positive(width, "kink width");
    return {amplitude, center, width};
}

void MicrotubuleKink::validate() const {
    require_dims(tube_diameter, kLength, "tube diameter");
    require_dims(kink_charge, kCharge, "kink charge");
    require_dims(environment_ion_density, kNumberDensity, "environment ion density");
    require_dims(superposition_span, kLength, "superposition span");
    require_positive(tube_diameter, "tube diameter");
    require_positive(kink_charge, "kink charge");
    require_positive(environment_ion_density, "environment ion density");
    require_positive(superposition_span, "superposition span");
    const double ratio = (superposition_span / tube_diameter).value();
    if (!(ratio > kSpanToDiameterMin))
        throw RegimeError("kink span must exceed the tube diameter (span/diameter = " +
                          std::to_string(ratio) + ", need > " +
                          std::to_string(kSpanToDiameterMin) +
                          ") for the distant-ion formula");
}

Quantity microtubule_timescale(const MicrotubuleKink& kink, const Quantity& temperature,
                               const Quantity& ion_mass) {
    kink.validate();
    require_positive(temperature, "microtubule: temperature");
    require_positive(ion_mass, "microtubule: ion mass");
    const auto& c = constants();
    const Quantity spacing =
        Quantity(std::pow(kink.environment_ion_density.value(), -1.0 / 3.0), kLength);
    const Quantity a = kink.tube_diameter + spacing;
    const double n_charges = (kink.kink_charge / c.electron_charge).value();
    // Separation in the nearest-ion formula saturates at a once the span
    // exceeds it, which it always does in the validated regime.
    const Quantity effective_span =
        kink.superposition_span.value() < a.value() ? kink.superposition_span : a;
    return nearest_ion_timescale(n_charges, kink.environment_ion_density, effective_span,
                                 ion_mass, temperature, a);
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::quantum: return "quantum";
        case Regime::classical: return "classical";
        case Regime::not_independent: return "not_independent";
        case Regime::boundary: return "boundary";
    }
    return "?";
}

SystemClassification classify(const Quantity& tau_dyn, const Quantity& tau_dec,
                              const Quantity& tau_diss) {
    require_dims(tau_dyn, kTime, "classify: tau_dyn");
    require_dims(tau_dec, kTime, "classify: tau_dec");
    require_dims(tau_diss, kTime, "classify: tau_diss");
    require_positive(tau_dyn, "classify: tau_dyn");
    require_positive(tau_dec, "classify: tau_dec");
    require_positive(tau_diss, "classify: tau_diss");

    SystemClassification out{tau_dyn, tau_dec, tau_diss, Regime::classical};
    const double r_dec = tau_dyn.value() / tau_dec.value();
    const double r_diss = tau_dyn.value() / tau_diss.value();

    if (r_diss > 1.0)
        out.regime = Regime::not_independent;
    else if (r_dec < 1.0)
        out.regime = Regime::quantum;
    else
        out.regime = Regime::classical;

    const bool near_dec = r_dec < kClassificationFuzz && r_dec > 1.0 / kClassificationFuzz;
    const bool near_diss = std::isfinite(r_diss) && r_diss < kClassificationFuzz &&
                           r_diss > 1.0 / kClassificationFuzz;
    if (near_dec || near_diss) out.regime = Regime::boundary;
    return out;
}

SystemClassification classify(const Quantity& tau_dyn, const Quantity& tau_dec) {
    return classify(tau_dyn, tau_dec, seconds(std::numeric_limits<double>::infinity()));
}

ColloidTimescales colloid_estimate(const Quantity& grain_mass, const Quantity& molecule_mass,
                                   const Quantity& collision_time) {
    require_dims(grain_mass, kMass, "colloid: grain mass");
    require_dims(molecule_mass, kMass, "colloid: molecule mass");
    require_dims(collision_time, kTime, "colloid: collision time");
    require_positive(molecule_mass, "colloid: molecule mass");
    require_positive(collision_time, "colloid: collision time");
    if (!(grain_mass.value() >= molecule_mass.value()))
        throw DomainError("colloid: grain mass must be >= molecule mass");
    return {collision_time * (grain_mass / molecule_mass), collision_time};
}

}  // namespace deco
