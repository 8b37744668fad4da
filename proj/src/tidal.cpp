#include "deco/tidal.hpp"

#include <cmath>

namespace deco {

TidalCoupling::TidalCoupling(const Eigen::Matrix3d& hessian_in,
                             const Eigen::Vector3d& separation_in,
                             const Eigen::Vector3d& force_in)
    : hessian(hessian_in), separation(separation_in), mean_force(force_in) {
    const double scale = hessian.cwiseAbs().maxCoeff();
    const double asym = (hessian - hessian.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > kSymmetryTol * scale)
        throw DomainError("tidal coupling: Hessian not symmetric");
}

GaussianEnvironmentState::GaussianEnvironmentState(const Eigen::Matrix3d& covariance_in)
    : covariance(covariance_in) {
    const double scale = covariance.cwiseAbs().maxCoeff();
    const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-12 * scale)
        throw DomainError("environment covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(covariance);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(scale, 1.0))
        throw DomainError("environment covariance not positive semidefinite");
}

GaussianEnvironmentState GaussianEnvironmentState::isotropic(const Quantity& spread) {
    require_dims(spread, kLength, "environment spread");
    require_positive(spread, "environment spread");
    const double s = spread.value();
    return GaussianEnvironmentState(s * s * Eigen::Matrix3d::Identity());
}

TidalCoupling coulomb_hessian(const Eigen::Vector3d& separation_m, const Quantity& q1,
                              const Quantity& q2) {
    require_dims(q1, kCharge, "coulomb_hessian: q1");
    require_dims(q2, kCharge, "coulomb_hessian: q2");
    require_positive(q1, "coulomb_hessian: q1");
    require_positive(q2, "coulomb_hessian: q2");
    const double a = separation_m.norm();
    if (!(a > 0.0)) throw DomainError("coulomb_hessian: zero separation");
    const Eigen::Vector3d a_hat = separation_m / a;
    const double gqq = (constants().coulomb_constant * q1 * q2).value();
    const Eigen::Matrix3d m =
        (3.0 * a_hat * a_hat.transpose() - Eigen::Matrix3d::Identity()) * (gqq / (a * a * a));
    const Eigen::Vector3d f = a_hat * (gqq / (a * a));
    return TidalCoupling(m, separation_m, f);
}

double tidal_exponent(const TidalCoupling& coupling, const GaussianEnvironmentState& env,
                      const Eigen::Vector3d& dr_m, const Quantity& time) {
    require_dims(time, kTime, "tidal exponent: time");
    const Eigen::Vector3d mdr = coupling.hessian * dr_m;
    const double form = mdr.dot(env.covariance * mdr);
    const double hbar = constants().hbar.value();
    const double t = time.value();
    return 0.5 * form * t * t / (hbar * hbar);
}

double tidal_suppression(const TidalCoupling& coupling, const GaussianEnvironmentState& env,
                         const Eigen::Vector3d& dr_m, const Quantity& time) {
    return std::exp(-tidal_exponent(coupling, env, dr_m, time));
}

Quantity tidal_timescale(const TidalCoupling& coupling, const GaussianEnvironmentState& env,
                         const Eigen::Vector3d& dr_m) {
    const Eigen::Vector3d mdr = coupling.hessian * dr_m;
    const double form = mdr.dot(env.covariance * mdr);
    if (!(form > 0.0))
        throw DomainError("no tidal decoherence in this direction (M dr vanishes)");
    return constants().hbar * Quantity(1.0 / std::sqrt(form), Dims{{-2, -1, 2, 0, 0, 0, 0}});
}

Quantity tidal_timescale_summed(const std::vector<TidalCoupling>& couplings,
                                const GaussianEnvironmentState& env,
                                const Eigen::Vector3d& dr_m) {
    double form = 0.0;
    for (const auto& c : couplings) {
        const Eigen::Vector3d mdr = c.hessian * dr_m;
        form += mdr.dot(env.covariance * mdr);
    }
    if (!(form > 0.0))
        throw DomainError("no tidal decoherence in this direction (all M dr vanish)");
    return constants().hbar * Quantity(1.0 / std::sqrt(form), Dims{{-2, -1, 2, 0, 0, 0, 0}});
}

Quantity minimal_thermal_spread(const Quantity& mass, const Quantity& temperature) {
    require_dims(mass, kMass, "minimal_thermal_spread: mass");
    require_dims(temperature, kTemperature, "minimal_thermal_spread: temperature");
    require_positive(mass, "minimal_thermal_spread: mass");
    require_positive(temperature, "minimal_thermal_spread: temperature");
    const auto& c = constants();
    return c.hbar / (mass * c.boltzmann * temperature).sqrt();
}

double theta_policy_factor(ThetaPolicy policy) {
    switch (policy) {
        case ThetaPolicy::worst:
            return 0.5;  // theta = 0: (1 + 3)^(-1/2)
        case ThetaPolicy::best:
        case ThetaPolicy::drop:
            return 1.0;  // theta = pi/2, or factor dropped entirely
    }
    return 1.0;
}

Quantity nearest_ion_timescale(double ion_count, const Quantity& number_density,
                               const Quantity& separation, const Quantity& mass,
                               const Quantity& temperature, std::optional<Quantity> ion_distance,
                               ThetaPolicy policy) {
    if (!(ion_count >= 1.0)) throw DomainError("nearest_ion_timescale: ion count must be >= 1");
    require_dims(number_density, kNumberDensity, "nearest_ion_timescale: number density");
    require_dims(separation, kLength, "nearest_ion_timescale: separation");
    require_positive(separation, "nearest_ion_timescale: separation");
    require_positive(mass, "nearest_ion_timescale: mass");
    require_positive(temperature, "nearest_ion_timescale: temperature");

    Quantity a{0.0, kLength};
    if (ion_distance.has_value()) {
        require_dims(*ion_distance, kLength, "nearest_ion_timescale: ion distance");
        require_positive(*ion_distance, "nearest_ion_timescale: ion distance");
        a = *ion_distance;
    } else {
        require_positive(number_density, "nearest_ion_timescale: number density");
        a = Quantity(std::pow(number_density.value(), -1.0 / 3.0), kLength);
    }

    const auto& c = constants();
    const Quantity q = c.electron_charge;
    const Quantity numer = a.pow(3) * (mass * c.boltzmann * temperature).sqrt();
    const Quantity denom = ion_count * c.coulomb_constant * q * q * separation;
    const Quantity tau = theta_policy_factor(policy) * numer / denom;
    require_dims(tau, kTime, "nearest_ion_timescale: result");
    return tau;
}

}  // namespace deco
