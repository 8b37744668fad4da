#pragma once

#include <Eigen/Dense>
#include <cmath>

#include <nlohmann/json_fwd.hpp>

#include "deco/errors.hpp"

namespace deco {

/// Uniform 1-D grid holding a complex wavefunction sampled at
/// x_i = (i - points/2) * spacing.  Point count must be a power of two;
/// the amplitude is normalized so sum |psi|^2 spacing = 1.
struct Grid1D {
    int points = 0;
    double extent = 0.0;  // m
    Eigen::VectorXcd values;

    double spacing() const { return extent / points; }
    double coordinate(int i) const { return (i - points / 2) * spacing(); }

    static Grid1D gaussian_packet(int points, double extent, double center, double sigma);
    void validate() const;
};

/// V(u) = offset - force u + (1/2) curvature u^2 evaluated at the
/// relative displacement u = x2 - x1 (deviations from mean positions).
/// offset and force only produce phases; curvature drives decoherence.
struct QuadraticPotential {
    double offset = 0.0;     // J
    double force = 0.0;      // N
    double curvature = 0.0;  // J/m^2
};

/// Pure two-particle wavefunction on the product grid, separable at t0.
struct TwoParticleState {
    Grid1D grid1;
    Grid1D grid2;
    Eigen::MatrixXcd joint;  // joint(i, j) = psi(x1_i, x2_j)

    static TwoParticleState product(Grid1D a, Grid1D b);
};

/// How far below the grid spacing the classical displacement
/// |F| t^2 / 2m must stay for the frozen-motion approximation.
inline constexpr double kMotionGuardFraction = 0.1;

/// Interaction-only evolution: multiplies the joint wavefunction by
/// exp(-i V(x2 - x1) t / hbar) pointwise (kinetic terms dropped).
/// Throws RegimeError when the mean force would move either particle
/// by more than kMotionGuardFraction of its grid spacing.
TwoParticleState evolve_two_particle(const TwoParticleState& state,
                                     const QuadraticPotential& potential, double time,
                                     double mass1, double mass2);

/// Position-basis density matrix sampled on a uniform grid;
/// trace * spacing = 1.
struct GridDensityMatrix {
    double spacing = 0.0;  // m
    Eigen::MatrixXcd rho;

    int points() const { return static_cast<int>(rho.rows()); }
    double extent() const { return spacing * points(); }
    double coordinate(int i) const { return (i - points() / 2) * spacing; }
    void validate() const;
};

/// Reduced density matrix of particle 1, rho1 = psi psi^dagger dx2.
GridDensityMatrix reduced_density(const TwoParticleState& state);

/// Measured off-diagonal suppression: the evolved reduced matrix divided
/// entrywise by the initial one (rebuilt from grid1), where the initial
/// magnitude exceeds 1e-8 of its peak.
struct SuppressionField {
    Eigen::MatrixXcd ratio;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;
};

SuppressionField reduce_and_compare(const TwoParticleState& evolved);

/// Discrete Wigner function W(x_j, p_k) on the N x N grid with momentum
/// step pi hbar / extent.  Separations are sampled at even multiples of
/// the grid spacing (the standard antidiagonal convention); rows far from
/// a localized state's support carry its cyclic alias.
struct WignerGrid {
    double spacing_x = 0.0;
    double hbar = 1.0;
    Eigen::MatrixXd values;

    int points() const { return static_cast<int>(values.rows()); }
    double extent() const { return spacing_x * points(); }
    double momentum_step() const { return M_PI * hbar / extent(); }
    double momentum(int k) const { return (k - points() / 2) * momentum_step(); }
};

WignerGrid wigner_transform(const GridDensityMatrix& rho, double hbar = 1.0);

/// Inverse of wigner_transform on the even-separation lattice it samples;
/// odd-separation entries are not represented and come back zero.
GridDensityMatrix density_from_wigner(const WignerGrid& w);

/// Momentum-transfer distribution sampled on the centered conjugate grid
/// q_i = (i - N/2) * q_step with q_step = 2 pi hbar / extent, normalized
/// so sum weights q_step = 1.
struct KickDistribution {
    Eigen::VectorXd weights;
    double q_step = 0.0;

    int points() const { return static_cast<int>(weights.size()); }
    double momentum(int i) const { return (i - points() / 2) * q_step; }
    void validate() const;
};

/// q step conjugate to a given density grid.
double kick_q_step(const GridDensityMatrix& rho, double hbar);

/// Normalizes raw weights into a valid distribution.
KickDistribution make_kick(Eigen::VectorXd weights, double q_step);

/// Phase-space convolution W(x, p) -> sum_q W(x, p - q) p(q) dq.
WignerGrid momentum_kick(const WignerGrid& w, const KickDistribution& kick);

/// Equivalent position-representation update: every entry (a, b) is
/// multiplied by the characteristic function p_hat((x_a - x_b)/hbar).
GridDensityMatrix multiply_suppression(const GridDensityMatrix& rho,
                                       const KickDistribution& kick, double hbar = 1.0);

/// Fixed verification suite; returns an array of
/// {test, grid, analytic_value, measured_value, relative_error} rows.
nlohmann::json run_oracle_suite();

}  // namespace deco
