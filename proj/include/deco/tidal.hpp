#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "deco/units.hpp"

namespace deco {

/// Second-order expansion of a pair interaction at mean separation a:
/// the Hessian drives decoherence, the mean force only contributes a
/// phase (kept for the grid oracle).  All entries are SI (J/m^2, m, N).
struct TidalCoupling {
    Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
    Eigen::Vector3d separation = Eigen::Vector3d::Zero();
    Eigen::Vector3d mean_force = Eigen::Vector3d::Zero();

    TidalCoupling() = default;
    TidalCoupling(const Eigen::Matrix3d& hessian, const Eigen::Vector3d& separation,
                  const Eigen::Vector3d& mean_force);

    static constexpr double kSymmetryTol = 1e-12;  // relative
};

/// Gaussian state of the environment particle, reduced to its position
/// covariance (m^2).  PSD is validated with a small negative tolerance.
struct GaussianEnvironmentState {
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();

    explicit GaussianEnvironmentState(const Eigen::Matrix3d& covariance);
    static GaussianEnvironmentState isotropic(const Quantity& spread);
};

/// Coupling for a pure Coulomb pair potential at vector separation a:
/// M = (3 a_hat a_hat^T - I) g q1 q2 / |a|^3, F = g q1 q2 a_hat / |a|^2.
/// trace(M) = 0 (Laplace equation).
TidalCoupling coulomb_hessian(const Eigen::Vector3d& separation_m, const Quantity& q1,
                              const Quantity& q2);

/// Quadratic-form exponent (1/2) dr^T M^T Sigma M dr t^2 / hbar^2.
double tidal_exponent(const TidalCoupling& coupling, const GaussianEnvironmentState& env,
                      const Eigen::Vector3d& dr_m, const Quantity& time);

/// Off-diagonal survival factor exp(-exponent); the mean-force phase is
/// not included in the magnitude.
double tidal_suppression(const TidalCoupling& coupling, const GaussianEnvironmentState& env,
                         const Eigen::Vector3d& dr_m, const Quantity& time);

/// Time at which the exponent reaches 1/2 (order unity):
/// tau = hbar (dr^T M^T Sigma M dr)^(-1/2); tidal_suppression at
/// t = tau equals exp(-1/2).  Throws DomainError when M dr = 0.
Quantity tidal_timescale(const TidalCoupling& coupling, const GaussianEnvironmentState& env,
                         const Eigen::Vector3d& dr_m);

/// Combined timescale for several environment particles; their exponents
/// add, so tau = hbar (sum_i dr^T M_i^T Sigma M_i dr)^(-1/2).
Quantity tidal_timescale_summed(const std::vector<TidalCoupling>& couplings,
                                const GaussianEnvironmentState& env,
                                const Eigen::Vector3d& dr_m);

/// Smallest position spread a thermal particle can have, hbar / sqrt(m k T).
Quantity minimal_thermal_spread(const Quantity& mass, const Quantity& temperature);

/// Handling of the (1 + 3 cos^2 theta)^(-1/2) orientation factor when the
/// environment-ion direction is unknown: drop it (= 1, matching the
/// order-of-magnitude tables), or take theta = 0 (worst case for
/// coherence, factor 1/2) / theta = pi/2 (best case, factor 1).
enum class ThetaPolicy { drop, worst, best };

double theta_policy_factor(ThetaPolicy policy);

/// Decoherence timescale from the single nearest environment ion:
/// tau = a^3 sqrt(m k T) / (N g q1 q2 |dr|) times the theta-policy factor,
/// with a = n^(-1/3) when no explicit ion distance is given.
Quantity nearest_ion_timescale(double ion_count, const Quantity& number_density,
                               const Quantity& separation, const Quantity& mass,
                               const Quantity& temperature,
                               std::optional<Quantity> ion_distance = std::nullopt,
                               ThetaPolicy policy = ThetaPolicy::drop);

}  // namespace deco
