#pragma once

// Finite matrix representations of the deformed oscillator algebras.
//
// Single mode (VPJC, PVC, CKN): basis |0>..|dim-1>, c|n> = sqrt(g_n)|n-1>,
// c^+|n> = sqrt(g_{n+1})|n+1>. A level with g_n < 0 gets a zero transition
// amplitude and is recorded as a norm violation; no complex entries appear.
//
// FN multimode: basis |n_1 ... n_d>, n_i in {0,1}, index = sum_i n_i 2^(d-i)
// (mode 1 is the most significant bit). With N the total occupation of the
// state acted on and sigma_i = sum_{k<i} n_k,
//
//     c_i |.. n_i = 1 ..> = (-1)^sigma_i q^((N-1)/2) |.. n_i = 0 ..>,
//
// and c_i^+ is the transpose. This Jordan-Wigner string plus symmetric
// amplitude is one convention among many; check_algebra is what certifies it.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfermi/kernels.hpp"
#include "qfermi/model.hpp"

namespace qfermi::fock {

struct NormViolation {
    int level;
    double g;
};

struct OperatorSet {
    ModelId model;
    Deformation q;
    int dim = 0;
    int modes = 1;
    std::vector<Eigen::MatrixXd> annihilators;
    std::vector<Eigen::MatrixXd> creators;  // exact transposes of annihilators
    Eigen::VectorXd number_op;              // diagonal of N (total occupation)
    std::vector<std::vector<int>> basis_labels;
    std::vector<NormViolation> norm_violations;
};

struct RelationResidual {
    std::string name;
    double residual;
};

struct AlgebraReport {
    std::vector<RelationResidual> relation_residuals;
    std::vector<NormViolation> norm_violations;
    int truncation_boundary = 0;

    double max_residual() const;
};

constexpr int kMaxFnModes = 10;

/// VPJC, PVC (dim >= 2) or CKN (dim == 2).
OperatorSet build_single_mode(ModelId model, Deformation q, int dim);

/// 1 <= d <= kMaxFnModes.
OperatorSet build_fn_multimode(int d, Deformation q);

/// Max-norm residual of every defining relation. Entries are divided by
/// max(1, |target|) so relations with q^(-N) targets stay comparable.
/// Relations containing c c^+ are evaluated strictly below the top level of a
/// truncated single-mode space.
AlgebraReport check_algebra(const OperatorSet& ops, kernels::Exec exec = kernels::Exec::parallel);

/// Diagonal of c^+ c (single mode) or sum_i c_i^+ c_i (FN), in basis order.
std::vector<double> spectrum_of_number_operator(const OperatorSet& ops);

/// Max residual of the FN relations for c'_i = sum_j T_ij c_j. T must be
/// unitary to 1e-12.
double covariance_check(int d, Deformation q, const Eigen::MatrixXcd& transform,
                        kernels::Exec exec = kernels::Exec::parallel);

/// Haar-distributed unitary from a fixed seed (QR of a complex Ginibre matrix).
Eigen::MatrixXcd random_unitary(int d, unsigned long long seed);

struct BuiltState {
    Eigen::VectorXd vector;  // (c^+)^n |0> / sqrt([n]!)
    double deviation;        // max-norm distance to the n-th basis vector
};

/// Throws NonNormalizable when some [k]! <= 0 for k <= n.
BuiltState build_state(const OperatorSet& ops, int n);

/// f = c (N / [N])^(1/2), the rescaling that maps a single-mode set onto an
/// undeformed fermion when the Fock space is {|0>, |1>}. On the CKN space the
/// weight is 1 on |1>, the only state c acts on.
Eigen::MatrixXd rescale_to_undeformed(const OperatorSet& ops);

}  // namespace qfermi::fock
