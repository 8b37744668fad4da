#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "deco/errors.hpp"

namespace deco {

/// Finite-dimensional density matrix: Hermitian, unit trace, positive
/// semidefinite (all within small tolerances).  Immutable value type.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kEigenvalueFloor = -1e-10;

    explicit DensityMatrix(Eigen::MatrixXcd entries);

    static DensityMatrix pure(const Eigen::VectorXcd& state);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& entries() const { return m_; }

    /// {"dim": n, "entries": [[re, im], ...]} row-major.
    nlohmann::json to_json() const;
    static DensityMatrix from_json(const nlohmann::json& j);

private:
    Eigen::MatrixXcd m_;
};

/// Ordered tensor-factor dimensions; their product must equal the
/// matrix dimension.  Factor 0 varies slowest (subject-major layout).
struct TensorPartition {
    std::vector<int> factor_dims;

    int total_dim() const;
    void validate_against(int dim) const;
};

/// Names for the product basis, e.g. the six subject x object states.
struct LabeledBasis {
    std::vector<std::string> names;

    void validate_against(int dim) const;
};

/// U rho U^dagger.  U must be unitary to 1e-10.
DensityMatrix evolve_unitary(const DensityMatrix& rho, const Eigen::MatrixXcd& u);

/// Scales every matrix element whose bra and ket differ in the pointer
/// factor's index by (1 - strength).  strength = 1 removes the pointer
/// factor's off-diagonal blocks completely.
DensityMatrix dephase(const DensityMatrix& rho, const TensorPartition& partition,
                      int pointer_factor, double strength);

/// Applies a basis-permutation unitary (one unit-modulus entry per
/// column) that correlates subject states with object outcomes.
DensityMatrix ideal_measurement(const DensityMatrix& rho, const TensorPartition& partition,
                                const Eigen::MatrixXcd& correlation_map);

/// Internal subject evolution U rho U^dagger on the subject factor alone.
DensityMatrix snap_decision(const DensityMatrix& subject_state, const Eigen::MatrixXcd& u);

/// The 3x3 real symmetric orthogonal completion of
/// |neutral> -> (|happy> + |sad>)/sqrt(2) used by the demos.  Being an
/// involution, applying it twice restores |neutral> exactly.
Eigen::MatrixXcd snap_decision_unitary();

/// The 6x6 permutation used by the measurement demo:
/// |neutral,up> <-> |happy,up>, |neutral,down> <-> |sad,down>.
Eigen::MatrixXcd measurement_correlation_unitary();

/// von Neumann entropy in bits, -sum lambda log2 lambda (0 log 0 = 0).
/// Eigenvalues in [kEigenvalueFloor, 0) are clamped to zero.
double entropy_bits(const DensityMatrix& rho);

/// Mutual information between factors i and j in bits:
/// S(rho_i) + S(rho_j) - S(rho_ij).
double mutual_information_bits(const DensityMatrix& rho, const TensorPartition& partition,
                               int factor_i, int factor_j);

/// Reduced density matrix over the kept factors (ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, const TensorPartition& partition,
                            const std::vector<int>& keep);

/// Subject (neutral/happy/sad) x object (up/down) conventions shared by
/// the demos: factor dims {3, 2}, subject-major basis order.
TensorPartition subject_object_partition();
LabeledBasis subject_object_basis();

struct DemoStage {
    std::string label;
    DensityMatrix state;
};

/// Object precesses, decoheres in the pointer basis, then is observed;
/// ends in an even mixture of |happy,up> and |sad,down>.
std::vector<DemoStage> measurement_demo_stages();

/// Subject makes a snap decision, then decoheres; ends in an even
/// mixture of |happy,up> and |sad,up>.
std::vector<DemoStage> snap_decision_demo_stages();

}  // namespace deco
