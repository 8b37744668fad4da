#pragma once

#include <array>
#include <string>

#include "deco/errors.hpp"

namespace deco {

/// Integer SI dimension exponents, ordered
/// (length, mass, time, current, temperature, amount, luminosity).
struct Dims {
    std::array<int, 7> e{};

    friend constexpr bool operator==(const Dims&, const Dims&) = default;

    constexpr Dims operator+(const Dims& o) const {
        Dims r{};
        for (int i = 0; i < 7; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    constexpr Dims operator-(const Dims& o) const {
        Dims r{};
        for (int i = 0; i < 7; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    constexpr Dims operator*(int k) const {
        Dims r{};
        for (int i = 0; i < 7; ++i) r.e[i] = e[i] * k;
        return r;
    }
    constexpr bool all_even() const {
        for (int x : e)
            if (x % 2 != 0) return false;
        return true;
    }
    constexpr Dims half() const {
        Dims r{};
        for (int i = 0; i < 7; ++i) r.e[i] = e[i] / 2;
        return r;
    }
    constexpr bool is_dimensionless() const { return *this == Dims{}; }

    /// "m^2 kg s^-2", or "1" for the empty vector.
    std::string str() const;
};

inline constexpr Dims kDimless{};
inline constexpr Dims kLength{{1, 0, 0, 0, 0, 0, 0}};
inline constexpr Dims kMass{{0, 1, 0, 0, 0, 0, 0}};
inline constexpr Dims kTime{{0, 0, 1, 0, 0, 0, 0}};
inline constexpr Dims kCurrent{{0, 0, 0, 1, 0, 0, 0}};
inline constexpr Dims kTemperature{{0, 0, 0, 0, 1, 0, 0}};
inline constexpr Dims kAmount{{0, 0, 0, 0, 0, 1, 0}};
inline constexpr Dims kLuminosity{{0, 0, 0, 0, 0, 0, 1}};

inline constexpr Dims kSpeed{{1, 0, -1, 0, 0, 0, 0}};
inline constexpr Dims kArea{{2, 0, 0, 0, 0, 0, 0}};
inline constexpr Dims kVolume{{3, 0, 0, 0, 0, 0, 0}};
inline constexpr Dims kRate{{0, 0, -1, 0, 0, 0, 0}};
inline constexpr Dims kNumberDensity{{-3, 0, 0, 0, 0, 0, 0}};
inline constexpr Dims kEnergy{{2, 1, -2, 0, 0, 0, 0}};
inline constexpr Dims kForce{{1, 1, -2, 0, 0, 0, 0}};
inline constexpr Dims kCharge{{0, 0, 1, 1, 0, 0, 0}};
inline constexpr Dims kVoltage{{2, 1, -3, -1, 0, 0, 0}};
inline constexpr Dims kDipoleMoment{{1, 0, 1, 1, 0, 0, 0}};
inline constexpr Dims kEnergyCurvature{{0, 1, -2, 0, 0, 0, 0}};  // J/m^2
inline constexpr Dims kAction{{2, 1, -1, 0, 0, 0, 0}};           // J s

/// A real SI magnitude tagged with integer dimension exponents.
/// All arithmetic is dimension-checked; quantities are immutable values.
class Quantity {
public:
    constexpr Quantity() = default;
    constexpr Quantity(double value, Dims dims) : v_(value), d_(dims) {}

    static constexpr Quantity dimensionless(double v) { return {v, kDimless}; }

    constexpr double value() const { return v_; }
    constexpr const Dims& dims() const { return d_; }
    constexpr bool is_dimensionless() const { return d_.is_dimensionless(); }

    /// Magnitude expressed in the given unit (dimensions must match).
    double value_in(const Quantity& unit) const;

    friend constexpr Quantity operator*(const Quantity& a, const Quantity& b) {
        return {a.v_ * b.v_, a.d_ + b.d_};
    }
    friend Quantity operator/(const Quantity& a, const Quantity& b) {
        if (b.v_ == 0.0) throw DomainError("division by zero-valued quantity");
        return {a.v_ / b.v_, a.d_ - b.d_};
    }
    friend Quantity operator+(const Quantity& a, const Quantity& b) {
        require_same_dims(a, b, "+");
        return {a.v_ + b.v_, a.d_};
    }
    friend Quantity operator-(const Quantity& a, const Quantity& b) {
        require_same_dims(a, b, "-");
        return {a.v_ - b.v_, a.d_};
    }
    friend constexpr Quantity operator*(double s, const Quantity& a) { return {s * a.v_, a.d_}; }
    friend constexpr Quantity operator*(const Quantity& a, double s) { return {s * a.v_, a.d_}; }
    friend Quantity operator/(const Quantity& a, double s) {
        if (s == 0.0) throw DomainError("division by zero");
        return {a.v_ / s, a.d_};
    }
    friend constexpr Quantity operator-(const Quantity& a) { return {-a.v_, a.d_}; }

    Quantity pow(int n) const;

    /// Square root; every dimension exponent must be even.
    Quantity sqrt() const;

    friend bool operator<(const Quantity& a, const Quantity& b) {
        require_same_dims(a, b, "<");
        return a.v_ < b.v_;
    }
    friend bool operator>(const Quantity& a, const Quantity& b) { return b < a; }
    friend bool operator<=(const Quantity& a, const Quantity& b) { return !(b < a); }
    friend bool operator>=(const Quantity& a, const Quantity& b) { return !(a < b); }

private:
    static void require_same_dims(const Quantity& a, const Quantity& b, const char* op);

    double v_ = 0.0;
    Dims d_{};
};

// SI unit makers.
constexpr Quantity meters(double v) { return {v, kLength}; }
constexpr Quantity kilograms(double v) { return {v, kMass}; }
constexpr Quantity seconds(double v) { return {v, kTime}; }
constexpr Quantity amperes(double v) { return {v, kCurrent}; }
constexpr Quantity kelvin(double v) { return {v, kTemperature}; }
constexpr Quantity moles(double v) { return {v, kAmount}; }
constexpr Quantity candelas(double v) { return {v, kLuminosity}; }
constexpr Quantity coulombs(double v) { return {v, kCharge}; }
constexpr Quantity volts(double v) { return {v, kVoltage}; }
constexpr Quantity joules(double v) { return {v, kEnergy}; }
constexpr Quantity newtons(double v) { return {v, kForce}; }
constexpr Quantity square_meters(double v) { return {v, kArea}; }
constexpr Quantity per_second(double v) { return {v, kRate}; }
constexpr Quantity per_cubic_meter(double v) { return {v, kNumberDensity}; }
constexpr Quantity meters_per_second(double v) { return {v, kSpeed}; }
constexpr Quantity debyes(double v) { return {v * 3.335640952e-30, kDipoleMoment}; }

/// Fundamental constants (CODATA 2018), each carried as a Quantity.
struct ConstantsTable {
    Quantity hbar;                 // J s
    Quantity boltzmann;            // J/K
    Quantity vacuum_permittivity;  // F/m
    Quantity coulomb_constant;     // 1/(4 pi eps0), N m^2/C^2
    Quantity electron_charge;      // C
    Quantity proton_mass;          // kg
    Quantity avogadro;             // 1/mol
};

const ConstantsTable& constants();

/// Identifier for reports ("which constants were these numbers computed with").
inline constexpr const char* kConstantsVersion = "CODATA-2018";

/// rms speed of a Boltzmann distribution, sqrt(3 k T / m).
Quantity thermal_speed(const Quantity& mass, const Quantity& temperature);

/// Thermal de Broglie wavelength, 2 pi hbar / sqrt(3 m k T).
/// Equals 2 pi hbar / (m v) with v = thermal_speed(m, T).
Quantity de_broglie_wavelength(const Quantity& mass, const Quantity& temperature);

/// Two-body reduced mass m1 m2 / (m1 + m2).
Quantity reduced_mass(const Quantity& m1, const Quantity& m2);

// Precondition helpers shared by the physics modules.
void require_dims(const Quantity& q, const Dims& want, const char* what);
void require_positive(const Quantity& q, const char* what);
void require_nonnegative(const Quantity& q, const char* what);

}  // namespace deco
