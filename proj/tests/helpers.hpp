#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "deco/trinity.hpp"
#include "deco/units.hpp"

namespace testutil {

inline bool rel_close(double a, double b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= tol * scale;
}

inline bool in_decade_of(double value, double reference) {
    return value >= reference / 10.0 && value <= reference * 10.0;
}

inline Eigen::MatrixXcd random_complex_matrix(std::mt19937& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = {gauss(rng), gauss(rng)};
    return a;
}

inline deco::DensityMatrix random_density(std::mt19937& rng, int dim) {
    const Eigen::MatrixXcd a = random_complex_matrix(rng, dim);
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    // Exact Hermitization kills rounding asymmetry before validation.
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return deco::DensityMatrix(rho);
}

inline Eigen::MatrixXcd random_unitary(std::mt19937& rng, int dim) {
    const Eigen::MatrixXcd a = random_complex_matrix(rng, dim);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return qr.householderQ();
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937& rng, int dim, double scale = 1.0) {
    const Eigen::MatrixXcd a = random_complex_matrix(rng, dim);
    return (a + a.adjoint()) * (0.5 * scale);
}

inline deco::Quantity random_quantity(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    std::uniform_int_distribution<int> expn(-2, 2);
    deco::Dims d{};
    for (int i = 0; i < 7; ++i) d.e[i] = expn(rng);
    return {mag(rng), d};
}

}  // namespace testutil
