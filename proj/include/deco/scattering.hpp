#pragma once

#include "deco/units.hpp"

namespace deco {

enum class ScattererKind { charged, dipolar };

/// A thermal population of environment particles the superposed ions
/// collide with.  `coupling` is a charge for `charged` scatterers and an
/// electric dipole moment for `dipolar` ones.
struct ScattererPopulation {
    Quantity number_density;  // 1/m^3, >= 0
    Quantity mass;            // kg, > 0
    Quantity temperature;     // K, > 0
    ScattererKind kind = ScattererKind::charged;
    Quantity coupling;        // C or C m, > 0

    static ScattererPopulation charged(const Quantity& number_density, const Quantity& mass,
                                       const Quantity& temperature, const Quantity& charge);
    static ScattererPopulation dipolar(const Quantity& number_density, const Quantity& mass,
                                       const Quantity& temperature, const Quantity& dipole_moment);
    void validate() const;
};

/// The superposed particle itself (one of the N ions crossing the membrane).
struct ProbeIon {
    Quantity mass;    // kg, > 0
    Quantity charge;  // C, > 0

    /// Monovalent 23 m_p ion, the default probe everywhere.
    static ProbeIon sodium_like();
    void validate() const;
};

/// Everything needed to evaluate a collisional decoherence timescale:
/// N ions superposed over `separation` in the given environment.
struct CollisionDecoherenceSpec {
    Quantity separation;  // m, > 0
    double ion_count = 1.0;  // N >= 1
    ProbeIon probe;
    ScattererPopulation environment;

    void validate() const;
};

/// Transverse velocity kick 2 g q1 q2 / (m v b) picked up by a particle of
/// mass m passing a charge at impact parameter b with speed v.
Quantity coulomb_deflection(const Quantity& impact_parameter, const Quantity& speed,
                            const Quantity& mass, const Quantity& q1, const Quantity& q2);

/// Large-angle Coulomb cross section pi (g q1 q2 / m v^2)^2, from the
/// impact parameter at which the deflection angle reaches order unity.
Quantity cross_section_coulomb(const Quantity& mass, const Quantity& speed, const Quantity& q1,
                               const Quantity& q2);

/// Large-angle charge-dipole cross section pi b^2 with b^2 = 2 g q p / (m v^2).
Quantity cross_section_dipole(const Quantity& mass, const Quantity& speed, const Quantity& charge,
                              const Quantity& dipole_moment);

enum class RateAveraging {
    /// sigma v evaluated at the rms relative speed sqrt(3 k T / mu).
    rms_speed,
    /// <sigma v> integrated over the Boltzmann relative-speed distribution
    /// (trapezoid quadrature, relative tolerance 1e-6).  The Coulomb cross
    /// section diverges as v -> 0, so it is capped at pi b_max^2 with
    /// b_max = n^(-1/3), the scale beyond which neighbouring scatterers
    /// screen the interaction.
    boltzmann_quadrature,
};

/// Scattering rate Lambda = n <sigma v> for one probe ion in the given
/// environment.  Kinematics use the two-body reduced mass throughout.
Quantity scattering_rate(const ProbeIon& probe, const ScattererPopulation& env,
                         RateAveraging averaging = RateAveraging::rms_speed);

/// Off-diagonal survival factor exp[-Lambda t (1 - exp(-dx^2 / 2 lambda^2))]
/// for a superposition of separation dx monitored by scatterers of de
/// Broglie wavelength lambda.  Exact form, not the asymptotic branches.
double suppression_factor_scattering(const Quantity& separation, const Quantity& wavelength,
                                     const Quantity& rate, const Quantity& time);

/// Separation must exceed the scatterer wavelength by this factor before
/// the one-collision-decoheres limit (tau = 1/(N Lambda)) applies.
inline constexpr double kSeparationToWavelengthMin = 10.0;

/// Collisional decoherence timescale tau = 1 / (N Lambda).  Throws
/// RegimeError unless separation/wavelength > kSeparationToWavelengthMin.
Quantity collision_decoherence_timescale(const CollisionDecoherenceSpec& spec,
                                         RateAveraging averaging = RateAveraging::rms_speed);

/// Order-of-magnitude closed forms with every O(1) factor dropped:
/// sqrt(m (kT)^3) / (N g^2 q^4 n) for charged environments and
/// sqrt(m k T) / (N g q p n) for dipolar ones, with m the probe mass.
/// Reported alongside the convention-pinned value above.
Quantity collision_timescale_order_estimate(const CollisionDecoherenceSpec& spec);

}  // namespace deco
