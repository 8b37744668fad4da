#include "deco/trinity.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include <nlohmann/json.hpp>

namespace deco {

namespace {

std::vector<int> decompose_index(int flat, const std::vector<int>& dims) {
    std::vector<int> idx(dims.size());
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
        idx[f] = flat % dims[f];
        flat /= dims[f];
    }
    return idx;
}

void require_unitary(const Eigen::MatrixXcd& u, const char* what, double tol = 1e-10) {
    if (u.rows() != u.cols()) throw DomainError(std::string(what) + ": matrix not square");
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    const double err =
        (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (err > tol)
        throw DomainError(std::string(what) + ": matrix not unitary (deviation " +
                          std::to_string(err) + ")");
}

Eigen::VectorXd clamped_spectrum(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (ev[i] < 0.0) {
            if (ev[i] < DensityMatrix::kEigenvalueFloor)
                throw DomainError("density matrix spectrum below the PSD tolerance");
            ev[i] = 0.0;
        }
    }
    return ev;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw DomainError("density matrix must be square and non-empty");
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol)
        throw DomainError("density matrix not Hermitian (deviation " + std::to_string(herm) +
                          ")");
    const std::complex<double> tr = m_.trace();
    if (std::abs(tr - std::complex<double>(1.0, 0.0)) > kTraceTol)
        throw DomainError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_);
    if (es.eigenvalues().minCoeff() < kEigenvalueFloor)
        throw DomainError("density matrix not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& state) {
    const double norm = state.norm();
    if (!(norm > 0.0)) throw DomainError("pure state must be non-zero");
    const Eigen::VectorXcd psi = state / norm;
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) throw DomainError("dimension must be positive");
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

nlohmann::json DensityMatrix::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            entries.push_back({m_(i, j).real(), m_(i, j).imag()});
    return nlohmann::json{{"dim", dim()}, {"entries", std::move(entries)}};
}

DensityMatrix DensityMatrix::from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("entries"))
        throw DomainError("density matrix JSON needs 'dim' and 'entries'");
    const int n = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (n < 1 || !entries.is_array() || static_cast<int>(entries.size()) != n * n)
        throw DomainError("density matrix JSON has inconsistent dimensions");
    Eigen::MatrixXcd m(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj, ++k)
            m(i, jj) = {entries[k].at(0).get<double>(), entries[k].at(1).get<double>()};
    return DensityMatrix(m);
}

int TensorPartition::total_dim() const {
    return std::accumulate(factor_dims.begin(), factor_dims.end(), 1, std::multiplies<>());
}

void TensorPartition::validate_against(int dim) const {
    if (factor_dims.empty()) throw DomainError("partition needs at least one factor");
    for (int d : factor_dims)
        if (d < 1) throw DomainError("partition factor dimensions must be positive");
    if (total_dim() != dim)
        throw DomainError("partition factor product " + std::to_string(total_dim()) +
                          " does not match matrix dimension " + std::to_string(dim));
}

void LabeledBasis::validate_against(int dim) const {
    if (static_cast<int>(names.size()) != dim)
        throw DomainError("basis has " + std::to_string(names.size()) +
                          " labels for dimension " + std::to_string(dim));
}

DensityMatrix evolve_unitary(const DensityMatrix& rho, const Eigen::MatrixXcd& u) {
    if (u.rows() != rho.dim())
        throw DomainError("evolve_unitary: operator dimension mismatch");
    require_unitary(u, "evolve_unitary");
    return DensityMatrix(u * rho.entries() * u.adjoint());
}

DensityMatrix dephase(const DensityMatrix& rho, const TensorPartition& partition,
                      int pointer_factor, double strength) {
    partition.validate_against(rho.dim());
    if (pointer_factor < 0 || pointer_factor >= static_cast<int>(partition.factor_dims.size()))
        throw DomainError("dephase: pointer factor index out of range");
    if (!(strength >= 0.0 && strength <= 1.0))
        throw DomainError("dephase: strength must be in [0, 1]");
    Eigen::MatrixXcd m = rho.entries();
    const int n = rho.dim();
    for (int i = 0; i < n; ++i) {
        const auto bi = decompose_index(i, partition.factor_dims);
        for (int j = 0; j < n; ++j) {
            const auto bj = decompose_index(j, partition.factor_dims);
            if (bi[pointer_factor] != bj[pointer_factor]) m(i, j) *= (1.0 - strength);
        }
    }
    return DensityMatrix(m);
}

DensityMatrix ideal_measurement(const DensityMatrix& rho, const TensorPartition& partition,
                                const Eigen::MatrixXcd& correlation_map) {
    partition.validate_against(rho.dim());
    if (correlation_map.rows() != rho.dim())
        throw DomainError("ideal_measurement: operator dimension mismatch");
    require_unitary(correlation_map, "ideal_measurement");
    // Basis-pair permutation: exactly one unit-modulus entry per column.
    for (int j = 0; j < correlation_map.cols(); ++j) {
        int nonzero = 0;
        for (int i = 0; i < correlation_map.rows(); ++i) {
            const double a = std::abs(correlation_map(i, j));
            if (a > 1e-10) {
                ++nonzero;
                if (std::abs(a - 1.0) > 1e-10) nonzero = 2;
            }
        }
        if (nonzero != 1)
            throw DomainError("ideal_measurement: map is not a basis permutation");
    }
    return DensityMatrix(correlation_map * rho.entries() * correlation_map.adjoint());
}

DensityMatrix snap_decision(const DensityMatrix& subject_state, const Eigen::MatrixXcd& u) {
    return evolve_unitary(subject_state, u);
}

Eigen::MatrixXcd snap_decision_unitary() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd u(3, 3);
    u << 0.0, s, s,
         s, 0.5, -0.5,
         s, -0.5, 0.5;
    return u;
}

Eigen::MatrixXcd measurement_correlation_unitary() {
    // Swaps 0<->2 (|neutral,up> <-> |happy,up>) and 1<->5
    // (|neutral,down> <-> |sad,down>); fixes 3 and 4.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(6, 6);
    u(2, 0) = 1.0;
    u(5, 1) = 1.0;
    u(0, 2) = 1.0;
    u(3, 3) = 1.0;
    u(4, 4) = 1.0;
    u(1, 5) = 1.0;
    return u;
}

double entropy_bits(const DensityMatrix& rho) {
    const Eigen::VectorXd ev = clamped_spectrum(rho);
    double s = 0.0;
    for (int i = 0; i < ev.size(); ++i)
        if (ev[i] > 0.0) s -= ev[i] * std::log2(ev[i]);
    return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const TensorPartition& partition,
                            const std::vector<int>& keep) {
    partition.validate_against(rho.dim());
    if (keep.empty()) throw DomainError("partial_trace: keep set must not be empty");
    const int n_factors = static_cast<int>(partition.factor_dims.size());
    std::vector<bool> kept(n_factors, false);
    for (int f : keep) {
        if (f < 0 || f >= n_factors) throw DomainError("partial_trace: factor out of range");
        if (kept[f]) throw DomainError("partial_trace: duplicate factor in keep set");
        kept[f] = true;
    }

    std::vector<int> kept_factors;
    int out_dim = 1;
    for (int f = 0; f < n_factors; ++f)
        if (kept[f]) {
            kept_factors.push_back(f);
            out_dim *= partition.factor_dims[f];
        }

    auto kept_flat = [&](const std::vector<int>& idx) {
        int flat = 0;
        for (int f : kept_factors) flat = flat * partition.factor_dims[f] + idx[f];
        return flat;
    };

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    const int n = rho.dim();
    for (int i = 0; i < n; ++i) {
        const auto bi = decompose_index(i, partition.factor_dims);
        for (int j = 0; j < n; ++j) {
            const auto bj = decompose_index(j, partition.factor_dims);
            bool traced_match = true;
            for (int f = 0; f < n_factors; ++f)
                if (!kept[f] && bi[f] != bj[f]) {
                    traced_match = false;
                    break;
                }
            if (traced_match) out(kept_flat(bi), kept_flat(bj)) += rho.entries()(i, j);
        }
    }
    return DensityMatrix(out);
}

double mutual_information_bits(const DensityMatrix& rho, const TensorPartition& partition,
                               int factor_i, int factor_j) {
    partition.validate_against(rho.dim());
    const int n_factors = static_cast<int>(partition.factor_dims.size());
    if (factor_i == factor_j || factor_i < 0 || factor_j < 0 || factor_i >= n_factors ||
        factor_j >= n_factors)
        throw DomainError("mutual_information: invalid factor pair");
    const DensityMatrix rho_i = partial_trace(rho, partition, {factor_i});
    const DensityMatrix rho_j = partial_trace(rho, partition, {factor_j});
    const std::vector<int> pair = factor_i < factor_j
                                      ? std::vector<int>{factor_i, factor_j}
                                      : std::vector<int>{factor_j, factor_i};
    const DensityMatrix rho_ij = partial_trace(rho, partition, pair);
    return entropy_bits(rho_i) + entropy_bits(rho_j) - entropy_bits(rho_ij);
}

TensorPartition subject_object_partition() { return TensorPartition{{3, 2}}; }

LabeledBasis subject_object_basis() {
    return LabeledBasis{{"neutral,up", "neutral,down", "happy,up", "happy,down", "sad,up",
                         "sad,down"}};
}

std::vector<DemoStage> measurement_demo_stages() {
    const TensorPartition part = subject_object_partition();

    Eigen::VectorXcd start = Eigen::VectorXcd::Zero(6);
    start(0) = 1.0;  // |neutral,up>
    DensityMatrix rho = DensityMatrix::pure(start);
    std::vector<DemoStage> stages;
    stages.push_back({"initial pure |neutral,up>", rho});

    // Object precession |up> -> (|up> + |down>)/sqrt(2), subject untouched.
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd precession(2, 2);
    precession << s, -s, s, s;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(6, 6);
    for (int sub = 0; sub < 3; ++sub) u.block(2 * sub, 2 * sub, 2, 2) = precession;
    rho = evolve_unitary(rho, u);
    stages.push_back({"object evolved in isolation", rho});

    rho = dephase(rho, part, 1, 1.0);
    stages.push_back({"object decohered by the environment", rho});

    rho = ideal_measurement(rho, part, measurement_correlation_unitary());
    stages.push_back({"object observed by the subject", rho});
    return stages;
}

std::vector<DemoStage> snap_decision_demo_stages() {
    const TensorPartition part = subject_object_partition();

    Eigen::VectorXcd start = Eigen::VectorXcd::Zero(6);
    start(0) = 1.0;  // |neutral,up>
    DensityMatrix rho = DensityMatrix::pure(start);
    std::vector<DemoStage> stages;
    stages.push_back({"initial pure |neutral,up>", rho});

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(6, 6);
    const Eigen::MatrixXcd us = snap_decision_unitary();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            u(2 * a, 2 * b) = us(a, b);
            u(2 * a + 1, 2 * b + 1) = us(a, b);
        }
    rho = evolve_unitary(rho, u);
    stages.push_back({"subject made a snap decision", rho});

    rho = dephase(rho, part, 0, 1.0);
    stages.push_back({"subject decohered by the environment", rho});
    return stages;
}

}  // namespace deco
