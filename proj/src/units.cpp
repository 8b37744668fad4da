#include "deco/units.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace deco {

namespace {
constexpr const char* kBaseSymbols[7] = {"m", "kg", "s", "A", "K", "mol", "cd"};
}

std::string Dims::str() const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < 7; ++i) {
        if (e[i] == 0) continue;
        if (any) os << ' ';
        os << kBaseSymbols[i];
        if (e[i] != 1) os << '^' << e[i];
        any = true;
    }
    return any ? os.str() : "1";
}

void Quantity::require_same_dims(const Quantity& a, const Quantity& b, const char* op) {
    if (a.d_ != b.d_)
        throw DimensionError(std::string("operator ") + op + ": incompatible dimensions [" +
                             a.d_.str() + "] vs [" + b.d_.str() + "]");
}

double Quantity::value_in(const Quantity& unit) const {
    if (d_ != unit.dims())
        throw DimensionError("value_in: incompatible dimensions [" + d_.str() + "] vs [" +
                             unit.dims().str() + "]");
    if (unit.value() == 0.0) throw DomainError("value_in: zero-valued unit");
    return v_ / unit.value();
}

Quantity Quantity::pow(int n) const {
    return {std::pow(v_, n), d_ * n};
}

Quantity Quantity::sqrt() const {
    if (!d_.all_even())
        throw DimensionError("sqrt: dimension exponents not all even [" + d_.str() + "]");
    if (v_ < 0.0) throw DomainError("sqrt: negative value");
    return {std::sqrt(v_), d_.half()};
}

const ConstantsTable& constants() {
    // CODATA 2018.  The Coulomb constant is derived from eps0 so the
    // g = 1/(4 pi eps0) identity holds to machine precision.
    static const ConstantsTable table = [] {
        ConstantsTable t;
        t.hbar = Quantity(1.054571817e-34, kAction);
        t.boltzmann = Quantity(1.380649e-23, kEnergy - kTemperature);
        t.vacuum_permittivity =
            Quantity(8.8541878128e-12, Dims{{-3, -1, 4, 2, 0, 0, 0}});  // F/m
        t.coulomb_constant =
            Quantity::dimensionless(0.25 / M_PI) / t.vacuum_permittivity;
        t.electron_charge = coulombs(1.602176634e-19);
        t.proton_mass = kilograms(1.67262192369e-27);
        t.avogadro = Quantity(6.02214076e23, kDimless - kAmount);
        return t;
    }();
    return table;
}

Quantity thermal_speed(const Quantity& mass, const Quantity& temperature) {
    require_dims(mass, kMass, "thermal_speed: mass");
    require_dims(temperature, kTemperature, "thermal_speed: temperature");
    require_positive(mass, "thermal_speed: mass");
    require_positive(temperature, "thermal_speed: temperature");
    const auto& c = constants();
    return (3.0 * c.boltzmann * temperature / mass).sqrt();
}

Quantity de_broglie_wavelength(const Quantity& mass, const Quantity& temperature) {
    require_dims(mass, kMass, "de_broglie_wavelength: mass");
    require_dims(temperature, kTemperature, "de_broglie_wavelength: temperature");
    require_positive(mass, "de_broglie_wavelength: mass");
    require_positive(temperature, "de_broglie_wavelength: temperature");
    const auto& c = constants();
    return 2.0 * M_PI * c.hbar / (3.0 * mass * c.boltzmann * temperature).sqrt();
}

Quantity reduced_mass(const Quantity& m1, const Quantity& m2) {
    require_dims(m1, kMass, "reduced_mass: m1");
    require_dims(m2, kMass, "reduced_mass: m2");
    require_positive(m1, "reduced_mass: m1");
    require_positive(m2, "reduced_mass: m2");
    return m1 * m2 / (m1 + m2);
}

void require_dims(const Quantity& q, const Dims& want, const char* what) {
    if (q.dims() != want)
        throw DimensionError(std::string(what) + ": expected [" + want.str() + "], got [" +
                             q.dims().str() + "]");
}

void require_positive(const Quantity& q, const char* what) {
    if (!(q.value() > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

void require_nonnegative(const Quantity& q, const char* what) {
    if (!(q.value() >= 0.0)) throw DomainError(std::string(what) + " must be non-negative");
}

}  // namespace deco
