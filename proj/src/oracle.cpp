#include "deco/oracle.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <nlohmann/json.hpp>

#include "deco/units.hpp"

namespace deco {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Forward DFT matrix F(m, k) = exp(-2 pi i k m / N).
Eigen::MatrixXcd dft_matrix(int n, double sign) {
    Eigen::MatrixXcd f(n, n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            f(m, k) = std::exp(sign * kI * (2.0 * M_PI * k * m / n));
    return f;
}

}  // namespace

Grid1D Grid1D::gaussian_packet(int points, double extent, double center, double sigma) {
    if (!power_of_two(points)) throw DomainError("grid points must be a power of two");
    if (!(extent > 0.0) || !(sigma > 0.0))
        throw DomainError("grid extent and packet width must be positive");
    Grid1D g{points, extent, Eigen::VectorXcd(points)};
    for (int i = 0; i < points; ++i) {
        const double x = g.coordinate(i) - center;
        g.values(i) = std::exp(-x * x / (4.0 * sigma * sigma));
    }
    const double norm = std::sqrt(g.values.squaredNorm() * g.spacing());
    g.values /= norm;
    return g;
}

void Grid1D::validate() const {
    if (!power_of_two(points)) throw DomainError("grid points must be a power of two");
    if (!(extent > 0.0)) throw DomainError("grid extent must be positive");
    if (values.size() != points) throw DomainError("grid value count mismatch");
    const double norm = values.squaredNorm() * spacing();
    if (std::abs(norm - 1.0) > 1e-9)
        throw DomainError("grid wavefunction not normalized (|psi|^2 dx = " +
                          std::to_string(norm) + ")");
}

TwoParticleState TwoParticleState::product(Grid1D a, Grid1D b) {
    a.validate();
    b.validate();
    TwoParticleState s{std::move(a), std::move(b), {}};
    s.joint = s.grid1.values * s.grid2.values.transpose();
    return s;
}

TwoParticleState evolve_two_particle(const TwoParticleState& state,
                                     const QuadraticPotential& potential, double time,
                                     double mass1, double mass2) {
    if (!(mass1 > 0.0) || !(mass2 > 0.0)) throw DomainError("particle masses must be positive");
    if (!(time >= 0.0)) throw DomainError("evolution time must be non-negative");
    state.grid1.validate();
    state.grid2.validate();

    const double f = std::abs(potential.force);
    const double move1 = f * time * time / (2.0 * mass1);
    const double move2 = f * time * time / (2.0 * mass2);
    if (move1 > kMotionGuardFraction * state.grid1.spacing() ||
        move2 > kMotionGuardFraction * state.grid2.spacing())
        throw RegimeError(
            "frozen-motion approximation violated: mean force would displace a particle by "
            "more than a tenth of the grid spacing over the requested time");

    const double hbar = constants().hbar.value();
    TwoParticleState out = state;
    for (int i = 0; i < state.grid1.points; ++i) {
        const double x1 = state.grid1.coordinate(i);
        for (int j = 0; j < state.grid2.points; ++j) {
            const double u = state.grid2.coordinate(j) - x1;
            const double v = potential.offset - potential.force * u +
                             0.5 * potential.curvature * u * u;
            out.joint(i, j) *= std::exp(-kI * v * time / hbar);
        }
    }
    return out;
}

void GridDensityMatrix::validate() const {
    if (rho.rows() != rho.cols() || rho.rows() < 1)
        throw DomainError("grid density matrix must be square");
    if (!(spacing > 0.0)) throw DomainError("grid spacing must be positive");
    const double scale = rho.cwiseAbs().maxCoeff();
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && herm > 1e-9 * scale)
        throw DomainError("grid density matrix not Hermitian");
}

GridDensityMatrix reduced_density(const TwoParticleState& state) {
    GridDensityMatrix r;
    r.spacing = state.grid1.spacing();
    r.rho = state.joint * state.joint.adjoint() * state.grid2.spacing();
    const double tr = r.rho.trace().real() * r.spacing;
    r.rho /= tr;
    return r;
}

SuppressionField reduce_and_compare(const TwoParticleState& evolved) {
    const GridDensityMatrix reduced = reduced_density(evolved);
    const int n = evolved.grid1.points;
    Eigen::MatrixXcd initial = evolved.grid1.values * evolved.grid1.values.adjoint().eval();
    const double tr = initial.trace().real() * evolved.grid1.spacing();
    initial /= tr;

    const double peak = initial.cwiseAbs().maxCoeff();
    const double threshold = 1e-8 * peak;
    SuppressionField field;
    field.ratio = Eigen::MatrixXcd::Zero(n, n);
    field.defined.resize(n, n);
    field.defined.setConstant(false);
    int count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(initial(i, j)) > threshold) {
                field.ratio(i, j) = reduced.rho(i, j) / initial(i, j);
                field.defined(i, j) = true;
                ++count;
            }
    if (count == 0)
        throw DomainError("initial reduced matrix below the division threshold everywhere");
    return field;
}

WignerGrid wigner_transform(const GridDensityMatrix& rho, double hbar) {
    rho.validate();
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    const int n = rho.points();
    if (!power_of_two(n)) throw DomainError("Wigner transform needs a power-of-two grid");

    // Antidiagonal rows D_j(m) = rho(j+m, j-m), sign-adjusted so that the
    // momentum label is centered: W(j,k) = (1/N) sum_m D_j(m) (-1)^m
    // exp(-2 pi i k m / N).
    Eigen::MatrixXcd d(n, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            const int a = (j + m) % n;
            const int b = (j - m % n + n) % n;
            d(j, m) = rho.rho(a, b) * (m % 2 == 0 ? 1.0 : -1.0);
        }
    const Eigen::MatrixXcd w_complex = d * dft_matrix(n, -1.0) / static_cast<double>(n);
    const double scale = w_complex.cwiseAbs().maxCoeff();
    if (scale > 0.0 && w_complex.imag().cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw DomainError("Wigner transform produced a non-real result");

    WignerGrid w;
    w.spacing_x = rho.spacing;
    w.hbar = hbar;
    w.values = w_complex.real();
    return w;
}

GridDensityMatrix density_from_wigner(const WignerGrid& w) {
    const int n = w.points();
    if (!power_of_two(n)) throw DomainError("Wigner grid needs a power-of-two size");
    const Eigen::MatrixXcd d =
        w.values.cast<Complex>() * dft_matrix(n, +1.0);
    GridDensityMatrix rho;
    rho.spacing = w.spacing_x;
    rho.rho = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            const int a = (j + m) % n;
            const int b = (j - m % n + n) % n;
            rho.rho(a, b) = d(j, m) * (m % 2 == 0 ? 1.0 : -1.0);
        }
    return rho;
}

void KickDistribution::validate() const {
    if (weights.size() < 1) throw DomainError("kick distribution is empty");
    if (!(q_step > 0.0)) throw DomainError("kick q step must be positive");
    if (weights.minCoeff() < 0.0) throw DomainError("kick weights must be non-negative");
    const double total = weights.sum() * q_step;
    if (std::abs(total - 1.0) > 1e-9)
        throw DomainError("kick distribution not normalized (integral = " +
                          std::to_string(total) + ")");
}

double kick_q_step(const GridDensityMatrix& rho, double hbar) {
    return 2.0 * M_PI * hbar / (rho.spacing * rho.points());
}

KickDistribution make_kick(Eigen::VectorXd weights, double q_step) {
    if (weights.size() < 1) throw DomainError("kick distribution is empty");
    if (!(q_step > 0.0)) throw DomainError("kick q step must be positive");
    const double total = weights.sum() * q_step;
    if (!(total > 0.0)) throw DomainError("kick weights sum to zero");
    KickDistribution k{std::move(weights), q_step};
    k.weights /= total;
    k.validate();
    return k;
}

WignerGrid momentum_kick(const WignerGrid& w, const KickDistribution& kick) {
    kick.validate();
    const int n = w.points();
    if (kick.points() != n) throw DomainError("kick grid size does not match Wigner grid");
    const double expected = 2.0 * w.momentum_step();
    if (std::abs(kick.q_step - expected) > 1e-9 * expected)
        throw DomainError("kick q step is not conjugate to the Wigner grid");

    WignerGrid out = w;
    out.values.setZero();
    for (int i = 0; i < n; ++i) {
        const double weight = kick.weights(i) * kick.q_step;
        if (weight == 0.0) continue;
        const int shift = 2 * (i - n / 2);
        for (int k = 0; k < n; ++k)
            out.values.col(k) += weight * w.values.col(((k - shift) % n + n) % n);
    }
    return out;
}

GridDensityMatrix multiply_suppression(const GridDensityMatrix& rho,
                                       const KickDistribution& kick, double hbar) {
    rho.validate();
    kick.validate();
    const int n = rho.points();
    if (kick.points() != n) throw DomainError("kick grid size does not match density grid");
    const double expected = kick_q_step(rho, hbar);
    if (std::abs(kick.q_step - expected) > 1e-9 * expected)
        throw DomainError("kick q step is not conjugate to the density grid");

    // Characteristic function p_hat(d dx / hbar) on centered separations d.
    Eigen::VectorXcd chi(n);
    for (int dcentered = -n / 2; dcentered < n / 2; ++dcentered) {
        Complex sum = 0.0;
        for (int i = 0; i < n; ++i)
            sum += kick.weights(i) * kick.q_step *
                   std::exp(kI * kick.momentum(i) * (dcentered * rho.spacing) / hbar);
        chi(dcentered + n / 2) = sum;
    }

    GridDensityMatrix out = rho;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int d = ((a - b + n / 2) % n + n) % n - n / 2;
            out.rho(a, b) *= chi(d + n / 2);
        }
    return out;
}

nlohmann::json run_oracle_suite() {
    nlohmann::json rows = nlohmann::json::array();
    const double hbar = constants().hbar.value();

    auto grid_info = [](int points, double extent) {
        return nlohmann::json{{"points", points}, {"extent_m", extent}};
    };

    // 1. Grid evolution vs the analytic Gaussian suppression factor.
    {
        const int n = 256;
        const double sigma = 1e-9;
        const double extent = 20.0 * sigma;
        const double t = 1e-6;
        const double kappa = std::sqrt(6.0) / 3.0 / (sigma * sigma);
        QuadraticPotential pot{0.0, 0.0, kappa * hbar / t};
        auto state = TwoParticleState::product(
            Grid1D::gaussian_packet(n, extent, 0.0, sigma),
            Grid1D::gaussian_packet(n, extent, 0.0, sigma));
        auto evolved = evolve_two_particle(state, pot, t, 23 * 1.67e-27, 23 * 1.67e-27);
        auto field = reduce_and_compare(evolved);

        double worst = 0.0, worst_meas = 0.0, worst_ana = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!field.defined(i, j)) continue;
                const double sep = state.grid1.coordinate(j) - state.grid1.coordinate(i);
                const double expo = 0.5 * pot.curvature * pot.curvature * sep * sep * sigma *
                                    sigma * t * t / (hbar * hbar);
                if (expo < 0.1 || expo > 3.0) continue;
                const double analytic = std::exp(-expo);
                const double rel = std::abs(std::abs(field.ratio(i, j)) - analytic) / analytic;
                if (rel > worst) {
                    worst = rel;
                    worst_meas = std::abs(field.ratio(i, j));
                    worst_ana = analytic;
                }
            }
        rows.push_back({{"test", "gaussian-suppression-grid-vs-analytic"},
                        {"grid", grid_info(n, extent)},
                        {"analytic_value", worst_ana},
                        {"measured_value", worst_meas},
                        {"relative_error", worst}});
    }

    // 2. Pure mean-force interaction leaves every |rho1| entry unchanged.
    {
        const int n = 256;
        const double sigma = 1e-9;
        const double extent = 20.0 * sigma;
        QuadraticPotential pot{0.0, 1e-25, 0.0};
        auto state = TwoParticleState::product(
            Grid1D::gaussian_packet(n, extent, 0.0, sigma),
            Grid1D::gaussian_packet(n, extent, 0.0, sigma));
        auto evolved = evolve_two_particle(state, pot, 1e-6, 3.8e-26, 3.8e-26);
        auto field = reduce_and_compare(evolved);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (field.defined(i, j))
                    worst = std::max(worst, std::abs(std::abs(field.ratio(i, j)) - 1.0));
        rows.push_back({{"test", "phase-only-magnitude-invariance"},
                        {"grid", grid_info(n, extent)},
                        {"analytic_value", 0.0},
                        {"measured_value", worst},
                        {"relative_error", worst}});
    }

    // 3. Phase-space convolution vs position-representation multiplication.
    {
        const int n = 256;
        const double spacing = 1.0;
        std::mt19937 rng(20240617);
        std::normal_distribution<double> gauss(0.0, 1.0);

        Eigen::VectorXcd psi(n);
        for (int i = 0; i < n; ++i) {
            const double x = (i - n / 2) * spacing;
            psi(i) = std::exp(-x * x / (4.0 * 36.0)) * std::exp(kI * 0.2 * x) +
                     0.5 * std::exp(-(x - 10) * (x - 10) / (4.0 * 16.0));
        }
        psi /= std::sqrt(psi.squaredNorm() * spacing);
        GridDensityMatrix rho{spacing, psi * psi.adjoint() * spacing};

        const double q_step = kick_q_step(rho, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd w(n);
            const double center = gauss(rng) * 2.0 * q_step;
            const double width = (1.0 + 3.0 * std::abs(gauss(rng))) * q_step;
            for (int i = 0; i < n; ++i) {
                const double q = (i - n / 2) * q_step;
                w(i) = std::exp(-0.5 * (q - center) * (q - center) / (width * width));
            }
            auto kick = make_kick(w, q_step);
            const WignerGrid lhs = wigner_transform(multiply_suppression(rho, kick, 1.0), 1.0);
            const WignerGrid rhs = momentum_kick(wigner_transform(rho, 1.0), kick);
            worst = std::max(worst, (lhs.values - rhs.values).cwiseAbs().maxCoeff());
        }
        rows.push_back({{"test", "wigner-duality-20-random-kicks"},
                        {"grid", grid_info(n, n * spacing)},
                        {"analytic_value", 0.0},
                        {"measured_value", worst},
                        {"relative_error", worst}});
    }

    // 4. Tidal momentum-transfer distribution reproduces the Gaussian factor.
    {
        const double sigma2 = 1e-9;
        const double t = 1.0;
        const double curvature = 0.8 * hbar / (sigma2 * sigma2);
        const int nq = 4096;
        const double qmax = 8.0 * curvature * t * sigma2;
        const double dq = 2.0 * qmax / nq;
        double worst = 0.0, worst_meas = 0.0, worst_ana = 0.0;
        for (int step = -12; step <= 12; ++step) {
            const double sep = step * 0.25 * sigma2;
            Complex phat = 0.0;
            for (int i = 0; i < nq; ++i) {
                const double q = -qmax + (i + 0.5) * dq;
                const double x2 = q / (curvature * t);
                const double p2 = std::exp(-x2 * x2 / (2 * sigma2 * sigma2)) /
                                  std::sqrt(2 * M_PI * sigma2 * sigma2);
                phat += p2 / (curvature * t) * std::exp(kI * q * sep / hbar) * dq;
            }
            const double analytic =
                std::exp(-0.5 * curvature * curvature * sep * sep * sigma2 * sigma2 * t * t /
                         (hbar * hbar));
            const double err = std::abs(std::abs(phat) - analytic);
            if (err > worst) {
                worst = err;
                worst_meas = std::abs(phat);
                worst_ana = analytic;
            }
        }
        rows.push_back({{"test", "momentum-transfer-reinterpretation"},
                        {"grid", grid_info(nq, 2 * qmax)},
                        {"analytic_value", worst_ana},
                        {"measured_value", worst_meas},
                        {"relative_error", worst}});
    }

    return rows;
}

}  // namespace deco
