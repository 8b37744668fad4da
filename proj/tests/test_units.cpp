#include <doctest.h>

#include <random>

#include "deco/units.hpp"
#include "helpers.hpp"

using namespace deco;
using testutil::rel_close;

TEST_CASE("quantity multiplication and division combine exponents") {
    const Quantity a = meters(2.0) * meters(3.0);
    CHECK(a.value() == doctest::Approx(6.0));
    CHECK(a.dims() == kArea);

    const Quantity b = joules(6.0) / kelvin(2.0);
    CHECK(b.value() == doctest::Approx(3.0));
    CHECK(b.dims() == kEnergy - kTemperature);

    const Quantity c = meters(5.0) * Quantity::dimensionless(1.0);
    CHECK(c.value() == doctest::Approx(5.0));
    CHECK(c.dims() == kLength);
}

TEST_CASE("addition requires matching dimensions") {
    CHECK_NOTHROW(meters(1.0) + meters(2.0));
    CHECK_THROWS_AS(meters(1.0) + seconds(2.0), DimensionError);
    CHECK_THROWS_AS(meters(1.0) - kilograms(2.0), DimensionError);
    CHECK_THROWS_AS(meters(1.0) < seconds(1.0), DimensionError);
}

TEST_CASE("division by zero-valued quantity is rejected") {
    CHECK_THROWS_AS(meters(1.0) / seconds(0.0), DomainError);
    CHECK_THROWS_AS(meters(1.0) / 0.0, DomainError);
}

TEST_CASE("sqrt requires even exponents") {
    CHECK(square_meters(9.0).sqrt().value() == doctest::Approx(3.0));
    CHECK(square_meters(9.0).sqrt().dims() == kLength);
    CHECK_THROWS_AS(meters(4.0).sqrt(), DimensionError);
    CHECK_THROWS_AS(square_meters(-1.0).sqrt(), DomainError);
}

TEST_CASE("value_in converts between compatible units") {
    CHECK(meters(5e-9).value_in(meters(1e-9)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(meters(1.0).value_in(seconds(1.0)), DimensionError);
}

TEST_CASE("coulomb constant satisfies g = 1/(4 pi eps0)") {
    const auto& c = constants();
    const Quantity product =
        c.coulomb_constant * c.vacuum_permittivity * Quantity::dimensionless(4.0 * M_PI);
    CHECK(product.dims() == kDimless);
    CHECK(rel_close(product.value(), 1.0, 1e-12));
    CHECK(rel_close(c.coulomb_constant.value(), 8.9875517923e9, 1e-9));
}

TEST_CASE("thermal speed at body temperature") {
    const auto& c = constants();
    const Quantity v_na = thermal_speed(23.0 * c.proton_mass, kelvin(310.0));
    CHECK(v_na.dims() == kSpeed);
    CHECK(rel_close(v_na.value(), 5.7772386114e2, 1e-9));

    const Quantity v_w = thermal_speed(18.0 * c.proton_mass, kelvin(310.0));
    CHECK(rel_close(v_w.value(), 6.5305231089e2, 1e-9));

    // T -> 0 limit.
    CHECK(thermal_speed(c.proton_mass, kelvin(1e-30)).value() < 1e-10);
    CHECK_THROWS_AS(thermal_speed(kilograms(-1.0), kelvin(300.0)), DomainError);
    CHECK_THROWS_AS(thermal_speed(c.proton_mass, kelvin(0.0)), DomainError);
    CHECK_THROWS_AS(thermal_speed(seconds(1.0), kelvin(300.0)), DimensionError);
}

TEST_CASE("de Broglie wavelength at body temperature") {
    const auto& c = constants();
    const Quantity lam_na = de_broglie_wavelength(23.0 * c.proton_mass, kelvin(310.0));
    CHECK(lam_na.dims() == kLength);
    CHECK(rel_close(lam_na.value(), 2.9813303626e-11, 1e-9));
    CHECK(lam_na.value() > 0.027e-9);
    CHECK(lam_na.value() < 0.033e-9);

    const Quantity lam_w = de_broglie_wavelength(18.0 * c.proton_mass, kelvin(310.0));
    CHECK(rel_close(lam_w.value(), 3.3700610513e-11, 1e-9));

    // lambda ~ m^(-1/2): quadrupling the mass halves the wavelength.
    const Quantity lam_4m = de_broglie_wavelength(4.0 * 23.0 * c.proton_mass, kelvin(310.0));
    CHECK(rel_close(lam_4m.value(), lam_na.value() / 2.0, 1e-12));
}

TEST_CASE("wavelength and speed conventions are mutually consistent") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> mass_amu(1.0, 100.0);
    std::uniform_real_distribution<double> temp(1.0, 2000.0);
    const auto& c = constants();
    for (int i = 0; i < 200; ++i) {
        const Quantity m = mass_amu(rng) * c.proton_mass;
        const Quantity t = kelvin(temp(rng));
        const Quantity lam = de_broglie_wavelength(m, t);
        const Quantity v = thermal_speed(m, t);
        // lambda sqrt(3 m k T) = 2 pi hbar
        const Quantity lhs = lam * (3.0 * m * c.boltzmann * t).sqrt();
        CHECK(rel_close(lhs.value(), (2.0 * M_PI * c.hbar).value(), 1e-12));
        CHECK(lhs.dims() == kAction);
        // lambda = 2 pi hbar / (m v)
        const Quantity rhs = 2.0 * M_PI * c.hbar / (m * v);
        CHECK(rel_close(lam.value(), rhs.value(), 1e-12));
    }
}

TEST_CASE("reduced mass") {
    const Quantity mu = reduced_mass(kilograms(2.0), kilograms(2.0));
    CHECK(rel_close(mu.value(), 1.0, 1e-12));
    CHECK(mu.dims() == kMass);
}

TEST_CASE("dimensional safety under randomized pipelines") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> op(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const Quantity a = testutil::random_quantity(rng);
        const Quantity b = testutil::random_quantity(rng);
        const Quantity c = testutil::random_quantity(rng);
        Dims expect{};
        Quantity r = Quantity::dimensionless(1.0);
        for (const Quantity& q : {a, b, c}) {
            if (op(rng) == 0) {
                r = r * q;
                expect = expect + q.dims();
            } else {
                r = r / q;
                expect = expect - q.dims();
            }
        }
        CHECK(r.dims() == expect);
        const Quantity squared = r * r;
        CHECK(squared.dims() == expect + expect);
        CHECK(squared.sqrt().dims() == expect);
    }
}
