#include "deco/scattering.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace deco {

namespace {

Quantity cross_section_for(const ScattererPopulation& env, const ProbeIon& probe,
                           const Quantity& mu, const Quantity& speed) {
    if (env.kind == ScattererKind::charged)
        return cross_section_coulomb(mu, speed, probe.charge, env.coupling);
    return cross_section_dipole(mu, speed, probe.charge, env.coupling);
}

/// <sigma(v) v> over the Maxwell-Boltzmann relative-speed distribution,
/// f(v) dv = 4 pi (mu / 2 pi k T)^{3/2} v^2 exp(-mu v^2 / 2 k T) dv.
/// Trapezoid on [0, 12 v_rms], interval-doubled to relative 1e-6.
Quantity boltzmann_sigma_v(const ProbeIon& probe, const ScattererPopulation& env,
                           const Quantity& mu) {
    const auto& c = constants();
    const double kT = (c.boltzmann * env.temperature).value();
    const double mu_v = mu.value();
    const double v_rms = std::sqrt(3.0 * kT / mu_v);

    // Screening cap for the Coulomb model: sigma(v) <= pi b_max^2 with
    // b_max the inter-scatterer spacing.  Without it the low-speed tail
    // of sigma ~ v^-4 makes the average diverge logarithmically.
    double sigma_cap = std::numeric_limits<double>::infinity();
    if (env.kind == ScattererKind::charged && env.number_density.value() > 0.0) {
        const double b_max = std::pow(env.number_density.value(), -1.0 / 3.0);
        sigma_cap = M_PI * b_max * b_max;
    }

    auto integrand = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        double sigma = cross_section_for(env, probe, mu, meters_per_second(v)).value();
        sigma = std::min(sigma, sigma_cap);
        const double f = 4.0 * M_PI * std::pow(mu_v / (2.0 * M_PI * kT), 1.5) * v * v *
                         std::exp(-mu_v * v * v / (2.0 * kT));
        return sigma * v * f;
    };

    const double v_max = 12.0 * v_rms;
    int n = 256;
    auto trapezoid = [&](int panels) {
        const double h = v_max / panels;
        double s = 0.5 * (integrand(0.0) + integrand(v_max));
        for (int i = 1; i < panels; ++i) s += integrand(i * h);
        return s * h;
    };
    double prev = trapezoid(n);
    for (int iter = 0; iter < 14; ++iter) {
        n *= 2;
        const double cur = trapezoid(n);
        if (std::abs(cur - prev) <= 1e-6 * std::abs(cur)) return {cur, kArea + kSpeed};
        prev = cur;
    }
    return {prev, kArea + kSpeed};
}

}  // namespace

ScattererPopulation ScattererPopulation::charged(const Quantity& number_density,
                                                 const Quantity& mass,
                                                 const Quantity& temperature,
                                                 const Quantity& charge) {
    ScattererPopulation p{number_density, mass, temperature, ScattererKind::charged, charge};
    p.validate();
    return p;
}

ScattererPopulation ScattererPopulation::dipolar(const Quantity& number_density,
                                                 const Quantity& mass,
                                                 const Quantity& temperature,
                                                 const Quantity& dipole_moment) {
    ScattererPopulation p{number_density, mass, temperature, ScattererKind::dipolar,
                          dipole_moment};
    p.validate();
    return p;
}

void ScattererPopulation::validate() const {
    require_dims(number_density, kNumberDensity, "scatterer number density");
    require_dims(mass, kMass, "scatterer mass");
    require_dims(temperature, kTemperature, "scatterer temperature");
    require_nonnegative(number_density, "scatterer number density");
    require_positive(mass, "scatterer mass");
    require_positive(temperature, "scatterer temperature");
    if (kind == ScattererKind::charged)
        require_dims(coupling, kCharge, "scatterer charge");
    else
        require_dims(coupling, kDipoleMoment, "scatterer dipole moment");
    require_positive(coupling, "scatterer coupling");
}

ProbeIon ProbeIon::sodium_like() {
    const auto& c = constants();
    return {23.0 * c.proton_mass, c.electron_charge};
}

void ProbeIon::validate() const {
    require_dims(mass, kMass, "probe mass");
    require_dims(charge, kCharge, "probe charge");
    require_positive(mass, "probe mass");
    require_positive(charge, "probe charge");
}

void CollisionDecoherenceSpec::validate() const {
    require_dims(separation, kLength, "separation");
    require_positive(separation, "separation");
    if (!(ion_count >= 1.0)) throw DomainError("ion count must be >= 1");
    probe.validate();
    environment.validate();
}

Quantity coulomb_deflection(const Quantity& impact_parameter, const Quantity& speed,
                            const Quantity& mass, const Quantity& q1, const Quantity& q2) {
    require_dims(impact_parameter, kLength, "coulomb_deflection: impact parameter");
    require_dims(speed, kSpeed, "coulomb_deflection: speed");
    require_dims(mass, kMass, "coulomb_deflection: mass");
    require_dims(q1, kCharge, "coulomb_deflection: q1");
    require_dims(q2, kCharge, "coulomb_deflection: q2");
    require_positive(impact_parameter, "coulomb_deflection: impact parameter");
    require_positive(speed, "coulomb_deflection: speed");
    require_positive(mass, "coulomb_deflection: mass");
    require_positive(q1, "coulomb_deflection: q1");
    require_positive(q2, "coulomb_deflection: q2");
    const auto& c = constants();
    return 2.0 * c.coulomb_constant * q1 * q2 / (mass * speed * impact_parameter);
}

Quantity cross_section_coulomb(const Quantity& mass, const Quantity& speed, const Quantity& q1,
                               const Quantity& q2) {
    require_dims(mass, kMass, "cross_section_coulomb: mass");
    require_dims(speed, kSpeed, "cross_section_coulomb: speed");
    require_dims(q1, kCharge, "cross_section_coulomb: q1");
    require_dims(q2, kCharge, "cross_section_coulomb: q2");
    require_positive(mass, "cross_section_coulomb: mass");
    require_positive(speed, "cross_section_coulomb: speed");
    require_positive(q1, "cross_section_coulomb: q1");
    require_positive(q2, "cross_section_coulomb: q2");
    const auto& c = constants();
    const Quantity b = c.coulomb_constant * q1 * q2 / (mass * speed * speed);
    return M_PI * b * b;
}

Quantity cross_section_dipole(const Quantity& mass, const Quantity& speed, const Quantity& charge,
                              const Quantity& dipole_moment) {
    require_dims(mass, kMass, "cross_section_dipole: mass");
    require_dims(speed, kSpeed, "cross_section_dipole: speed");
    require_dims(charge, kCharge, "cross_section_dipole: charge");
    require_dims(dipole_moment, kDipoleMoment, "cross_section_dipole: dipole moment");
    require_positive(mass, "cross_section_dipole: mass");
    require_positive(speed, "cross_section_dipole: speed");
    require_positive(charge, "cross_section_dipole: charge");
    require_positive(dipole_moment, "cross_section_dipole: dipole moment");
    const auto& c = constants();
    // b^2 at unit deflection angle, theta = 2 g q p / (m v^2 b^2) = 1.
    const Quantity b_squared = 2.0 * c.coulomb_constant * charge * dipole_moment /
                               (mass * speed * speed);
    return M_PI * b_squared;
}

Quantity scattering_rate(const ProbeIon& probe, const ScattererPopulation& env,
                         RateAveraging averaging) {
    probe.validate();
    env.validate();
    const Quantity mu = reduced_mass(probe.mass, env.mass);
    Quantity sigma_v{0.0, kArea + kSpeed};
    if (averaging == RateAveraging::rms_speed) {
        const Quantity v = thermal_speed(mu, env.temperature);
        sigma_v = cross_section_for(env, probe, mu, v) * v;
    } else {
        sigma_v = boltzmann_sigma_v(probe, env, mu);
    }
    const Quantity rate = env.number_density * sigma_v;
    require_dims(rate, kRate, "scattering_rate: result");
    return rate;
}

double suppression_factor_scattering(const Quantity& separation, const Quantity& wavelength,
                                     const Quantity& rate, const Quantity& time) {
    require_dims(separation, kLength, "suppression factor: separation");
    require_dims(wavelength, kLength, "suppression factor: wavelength");
    require_dims(rate, kRate, "suppression factor: rate");
    require_dims(time, kTime, "suppression factor: time");
    require_nonnegative(separation, "suppression factor: separation");
    require_positive(wavelength, "suppression factor: wavelength");
    require_nonnegative(rate, "suppression factor: rate");
    require_nonnegative(time, "suppression factor: time");
    const double dx = separation.value();
    const double lam = wavelength.value();
    const double r = dx / lam;
    return std::exp(-rate.value() * time.value() * (-std::expm1(-0.5 * r * r)));
}

Quantity collision_decoherence_timescale(const CollisionDecoherenceSpec& spec,
                                         RateAveraging averaging) {
    spec.validate();
    const Quantity lambda = de_broglie_wavelength(spec.environment.mass,
                                                  spec.environment.temperature);
    const double ratio = (spec.separation / lambda).value();
    if (!(ratio > kSeparationToWavelengthMin))
        throw RegimeError(
            "collision timescale requires separation >> scatterer wavelength "
            "(separation/wavelength = " +
            std::to_string(ratio) + ", need > " + std::to_string(kSeparationToWavelengthMin) +
            "); the exponential-decay limit does not apply");
    const Quantity rate = scattering_rate(spec.probe, spec.environment, averaging);
    if (rate.value() <= 0.0)
        throw DomainError("collision timescale undefined for zero scattering rate");
    return Quantity::dimensionless(1.0) / (spec.ion_count * rate);
}

Quantity collision_timescale_order_estimate(const CollisionDecoherenceSpec& spec) {
    spec.validate();
    const auto& c = constants();
    const Quantity kT = c.boltzmann * spec.environment.temperature;
    const Quantity n = spec.environment.number_density;
    if (n.value() <= 0.0)
        throw DomainError("order estimate undefined for zero scatterer density");
    const double N = spec.ion_count;
    if (spec.environment.kind == ScattererKind::charged) {
        const Quantity q = spec.probe.charge;
        const Quantity numer = (spec.probe.mass * kT.pow(3)).sqrt();
        return numer / (N * c.coulomb_constant.pow(2) * q.pow(4) * n);
    }
    const Quantity numer = (spec.probe.mass * kT).sqrt();
    return numer /
           (N * c.coulomb_constant * spec.probe.charge * spec.environment.coupling * n);
}

}  // namespace deco
