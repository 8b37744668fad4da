#pragma once

#include <optional>
#include <string>

#include "deco/units.hpp"

namespace deco {

/// Axon membrane patch geometry and potentials for the ion-count estimate.
struct NeuronGeometry {
    Quantity membrane_thickness;  // m, > 0
    Quantity diameter;            // m, > 0
    Quantity axon_length;         // m, > 0
    double bare_fraction = 1.0;   // (0, 1], non-myelinated area fraction
    Quantity resting_potential;   // V
    Quantity firing_potential;    // V, > resting

    void validate() const;
};

/// Number of ions that migrate through the membrane during one firing:
/// N = pi d L f eps0 (U1 - U0) / (q h).  Returned as the raw real value.
double neuron_ion_count(const NeuronGeometry& geometry);

/// Same, rounded to the nearest integer for reporting.
long long neuron_ion_count_nearest(const NeuronGeometry& geometry);

/// Polarization step profile p(x) = -p0 tanh((x - center)/width): +p0 far
/// left, -p0 far right.  p0 carries charge units (dipole moment per unit
/// length), so the kink's net charge -integral p'(x) dx equals 2 p0
/// independent of the interpolation width.
struct KinkProfile {
    Quantity amplitude;  // C
    Quantity center;     // m
    Quantity width;      // m, > 0

    Quantity polarization(const Quantity& x) const;
    Quantity polarization_gradient(const Quantity& x) const;

    /// -integral p'(x) dx by adaptive Simpson quadrature over
    /// center +- half_range (default 40 widths); relative accuracy
    /// far better than 1e-9 for this smooth profile.
    Quantity net_charge(double half_range_widths = 40.0) const;
};

KinkProfile kink_profile(const Quantity& amplitude, const Quantity& center,
                         const Quantity& width);

/// Span must exceed the tube diameter by this factor before the
/// saturated distant-ion formula applies.
inline constexpr double kSpanToDiameterMin = 10.0;

/// A polarization kink superposed over `superposition_span` along a tube.
struct MicrotubuleKink {
    Quantity tube_diameter;            // m, > 0
    Quantity kink_charge;              // C, > 0 (2 p0)
    Quantity environment_ion_density;  // 1/m^3, > 0
    Quantity superposition_span;       // m, > kSpanToDiameterMin * diameter

    void validate() const;
};

/// Distant-ion decoherence timescale for the kink.  The nearest ion sits
/// at a = D + n^(-1/3); for spans beyond a the separation in the
/// nearest-ion formula saturates at a, giving
/// tau = a^2 sqrt(m k T) / (N g q_e^2) with N = Q / q_e.
Quantity microtubule_timescale(const MicrotubuleKink& kink, const Quantity& temperature,
                               const Quantity& ion_mass);

enum class Regime { quantum, classical, not_independent, boundary };

const char* regime_name(Regime regime);

struct SystemClassification {
    Quantity tau_dyn;
    Quantity tau_dec;
    Quantity tau_diss;  // +infinity when no dissipation bound was supplied
    Regime regime = Regime::classical;
};

/// Ratios within this factor of a regime threshold are labelled "boundary"
/// (the thresholds are not sharp).
inline constexpr double kClassificationFuzz = 3.0;

/// Timescale classification: quantum when tau_dyn < tau_dec,
/// not-independent when tau_dyn > tau_diss, classical in between.
SystemClassification classify(const Quantity& tau_dyn, const Quantity& tau_dec,
                              const Quantity& tau_diss);

/// Same with no dissipation bound (tau_diss = +infinity).
SystemClassification classify(const Quantity& tau_dyn, const Quantity& tau_dec);

struct ColloidTimescales {
    Quantity tau_diss;  // tau_coll * (M / m)
    Quantity tau_dec;   // tau_coll
};

/// Grain-in-fluid estimate: dissipation needs ~M/m collisions, decoherence
/// one, so tau_diss / tau_dec = M / m.
ColloidTimescales colloid_estimate(const Quantity& grain_mass, const Quantity& molecule_mass,
                                   const Quantity& collision_time);

}  // namespace deco
