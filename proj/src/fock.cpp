#include "qfermi/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/QR>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include "qfermi/qnum.hpp"

namespace qfermi::fock {

namespace {

using SparseD = Eigen::SparseMatrix<double>;
using SparseC = Eigen::SparseMatrix<std::complex<double>>;

// Largest entry of (lhs - diag(target)) over the leading block x block corner,
// each entry divided by max(1, |target|) on the diagonal.
double scaled_residual(const Eigen::MatrixXd& lhs, const Eigen::VectorXd& target, int block) {
    double worst = 0.0;
    for (int col = 0; col < block; ++col) {
        for (int row = 0; row < block; ++row) {
            double value = lhs(row, col);
            double scale = 1.0;
            if (row == col) {
                value -= target(row);
                scale = std::max(1.0, std::abs(target(row)));
            }
            worst = std::max(worst, std::abs(value) / scale);
        }
    }
    return worst;
}

// N a - a N - shift*a from matrix products, each entry divided by max(1, sum of the term magnitudes).
double commutator_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& number, double shift) {
    const Eigen::MatrixXd n_diag = number.asDiagonal();
    const Eigen::MatrixXd lhs = n_diag * a - a * n_diag - shift * a;
    double worst = 0.0;
    for (int col = 0; col < a.cols(); ++col) {
        for (int row = 0; row < a.rows(); ++row) {
            const double value = lhs(row, col);
            const double scale = (std::abs(number(row)) + std::abs(number(col)) + std::abs(shift)) * std::abs(a(row, col));
            worst = std::max(worst, std::abs(value) / std::max(1.0, scale));
        }
    }
    return worst;
}

template <class Scalar>
double scaled_residual(const Eigen::SparseMatrix<Scalar>& lhs, const Eigen::VectorXd& target) {
    double worst = 0.0;
    Eigen::VectorXd diagonal_seen = Eigen::VectorXd::Zero(target.size());
    for (int col = 0; col < lhs.outerSize(); ++col) {
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(lhs, col); it; ++it) {
            Scalar value = it.value();
            double scale = 1.0;
            if (it.row() == it.col()) {
                value -= target(it.row());
                scale = std::max(1.0, std::abs(target(it.row())));
                diagonal_seen(it.row()) = 1.0;
            }
            worst = std::max(worst, std::abs(value) / scale);
        }
    }
    for (int k = 0; k < target.size(); ++k) {
        if (diagonal_seen(k) == 0.0) {
            worst = std::max(worst, std::abs(target(k)) / std::max(1.0, std::abs(target(k))));
        }
    }
    return worst;
}

Eigen::VectorXd power_of_number(double base, const Eigen::VectorXd& number) {
    return number.unaryExpr([base](double n) { return std::pow(base, n); });
}

double spectrum_value(ModelId model, int n, Deformation q) {
    switch (model) {
        case ModelId::VPJC:
        case ModelId::PVC:
        case ModelId::CKN: return qnum::basic(model, n, q);
        default: throw InvalidArgument("single-mode representation exists for VPJC, PVC and CKN only");
    }
}

OperatorSet empty_set(ModelId model, Deformation q, int dim, int modes) {
    OperatorSet ops{model, q, dim, modes, {}, {}, Eigen::VectorXd::Zero(dim), {}, {}};
    ops.basis_labels.reserve(dim);
    return ops;
}

}  // namespace

double AlgebraReport::max_residual() const {
    double worst = 0.0;
    for (const auto& r : relation_residuals) worst = std::max(worst, r.residual);
    return worst;
}

OperatorSet build_single_mode(ModelId model, Deformation q, int dim) {
    if (dim < 2) throw InvalidArgument("build_single_mode: dim must be >= 2");
    if (model == ModelId::CKN && dim != 2) {
        throw InvalidArgument("build_single_mode: the CKN Fock space has exactly two states");
    }
    OperatorSet ops = empty_set(model, q, dim, 1);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        ops.number_op(n) = n;
        ops.basis_labels.push_back({n});
        if (n == 0) continue;
        const double g = spectrum_value(model, n, q);
        if (g < 0.0) {
            ops.norm_violations.push_back({n, g});
            continue;
        }
        c(n - 1, n) = std::sqrt(g);
    }
    ops.creators.push_back(c.transpose());
    ops.annihilators.push_back(std::move(c));
    return ops;
}

OperatorSet build_fn_multimode(int d, Deformation q) {
    if (d < 1 || d > kMaxFnModes) {
        throw InvalidArgument(fmt::format("build_fn_multimode: d must lie in [1, {}]", kMaxFnModes));
    }
    const int dim = 1 << d;
    OperatorSet ops = empty_set(ModelId::FN, q, dim, d);
    for (int b = 0; b < dim; ++b) {
        std::vector<int> label(d);
        for (int i = 0; i < d; ++i) label[i] = (b >> (d - 1 - i)) & 1;
        ops.number_op(b) = std::popcount(static_cast<unsigned>(b));
        ops.basis_labels.push_back(std::move(label));
    }
    for (int i = 0; i < d; ++i) {
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
        const int bit = 1 << (d - 1 - i);
        for (int b = 0; b < dim; ++b) {
            if ((b & bit) == 0) continue;
            const auto& label = ops.basis_labels[b];
            int sigma = 0;
            for (int k = 0; k < i; ++k) sigma += label[k];
            const double total = ops.number_op(b);
            const double sign = (sigma % 2 == 0) ? 1.0 : -1.0;
            c(b ^ bit, b) = sign * std::pow(q.value(), (total - 1.0) / 2.0);
        }
        ops.creators.push_back(c.transpose());
        ops.annihilators.push_back(std::move(c));
    }
    return ops;
}

namespace {

// Relation families of the FN algebra for an arbitrary list of (possibly
// transformed) annihilators. Scalar is double or complex<double>.
template <class Scalar>
std::vector<RelationResidual> fn_relations(const std::vector<Eigen::SparseMatrix<Scalar>>& annihilators,
                                           const Eigen::VectorXd& number, double q, kernels::Exec exec) {
    using Sparse = Eigen::SparseMatrix<Scalar>;
    const int d = static_cast<int>(annihilators.size());
    const long pairs = static_cast<long>(d) * d;
    const Eigen::VectorXd q_pow_n = power_of_number(q, number);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(number.size());

    Sparse number_op(number.size(), number.size());
    Sparse number_plus_one(number.size(), number.size());
    {
        std::vector<Eigen::Triplet<Scalar>> diag, diag1;
        for (int k = 0; k < number.size(); ++k) {
            diag.emplace_back(k, k, Scalar(number(k)));
            diag1.emplace_back(k, k, Scalar(number(k) + 1.0));
        }
        number_op.setFromTriplets(diag.begin(), diag.end());
        number_plus_one.setFromTriplets(diag1.begin(), diag1.end());
    }
    std::vector<Sparse> creators(d);
    for (int i = 0; i < d; ++i) creators[i] = annihilators[i].adjoint();

    std::vector<double> mixed(pairs), anti(pairs), shift(d);
    auto pair_kernel = [&](long p) {
        const int i = static_cast<int>(p / d);
        const int j = static_cast<int>(p % d);
        const Sparse lhs = Sparse(annihilators[i] * creators[j]) + Scalar(q) * Sparse(creators[j] * annihilators[i]);
        mixed[p] = (i == j) ? scaled_residual(lhs, q_pow_n) : scaled_residual(lhs, zero);
        const Sparse ac = Sparse(annihilators[i] * annihilators[j]) + Sparse(annihilators[j] * annihilators[i]);
        anti[p] = scaled_residual(ac, zero);
    };
    auto shift_kernel = [&](int j) {
        const Sparse lhs = Sparse(annihilators[j] * number_op) - Sparse(number_plus_one * annihilators[j]);
        shift[j] = scaled_residual(lhs, zero);
    };

    if (exec == kernels::Exec::serial) {
        for (long p = 0; p < pairs; ++p) pair_kernel(p);
        for (int j = 0; j < d; ++j) shift_kernel(j);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long p = 0; p < pairs; ++p) pair_kernel(p);
#pragma omp parallel for schedule(static)
        for (int j = 0; j < d; ++j) shift_kernel(j);
    }
    return {
        {"c_i c_j^+ + q c_j^+ c_i - delta_ij q^N", kernels::max_abs_serial(mixed)},
        {"c_i c_j + c_j c_i", kernels::max_abs_serial(anti)},
        {"c_j N - (N+1) c_j", kernels::max_abs_serial(shift)},
    };
}

}  // namespace

AlgebraReport check_algebra(const OperatorSet& ops, kernels::Exec exec) {
    AlgebraReport report;
    report.norm_violations = ops.norm_violations;
    const double q = ops.q.value();

    if (ops.model == ModelId::FN) {
        std::vector<SparseD> annihilators;
        annihilators.reserve(ops.annihilators.size());
        for (const auto& c : ops.annihilators) annihilators.push_back(c.sparseView());
        report.relation_residuals = fn_relations(annihilators, ops.number_op, q, exec);
        report.truncation_boundary = ops.dim - 1;
        return report;
    }

    const Eigen::MatrixXd& c = ops.annihilators.front();
    const Eigen::MatrixXd& cd = ops.creators.front();
    const Eigen::MatrixXd number = ops.number_op.asDiagonal();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(ops.dim);
    const int full = ops.dim;
    // CKN is exact on its two states; the others are truncations of an infinite tower.
    const int below_top = (ops.model == ModelId::CKN) ? full : full - 1;
    report.truncation_boundary = below_top - 1;

    const Eigen::MatrixXd ccd = c * cd;
    const Eigen::MatrixXd cdc = cd * c;
    auto add = [&report](std::string name, double residual) {
        report.relation_residuals.push_back({std::move(name), residual});
    };

    switch (ops.model) {
        case ModelId::VPJC:
            add("c c^+ + q c^+ c - 1", scaled_residual(ccd + q * cdc, Eigen::VectorXd::Ones(full), below_top));
            break;
        case ModelId::PVC:
            add("c c^+ + q c^+ c - q^-N",
                scaled_residual(ccd + q * cdc, power_of_number(1.0 / q, ops.number_op), below_top));
            break;
        case ModelId::CKN:
            add("c c^+ + q c^+ c - q^N", scaled_residual(ccd + q * cdc, power_of_number(q, ops.number_op), full));
            add("c c^+ + q^-1 c^+ c - q^-N",
                scaled_residual(ccd + cdc / q, power_of_number(1.0 / q, ops.number_op), full));
            add("c^2", scaled_residual(c * c, zero, full));
            add("(c^+)^2", scaled_residual(cd * cd, zero, full));
            break;
        default: throw InvalidArgument("check_algebra: unsupported model");
    }
    add("[N, c] + c", commutator_residual(c, ops.number_op, -1.0));
    add("[N, c^+] - c^+", commutator_residual(cd, ops.number_op, 1.0));
    return report;
}

std::vector<double> spectrum_of_number_operator(const OperatorSet& ops) {
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(ops.dim);
    for (std::size_t i = 0; i < ops.annihilators.size(); ++i) {
        diagonal += (ops.creators[i] * ops.annihilators[i]).diagonal();
    }
    return {diagonal.data(), diagonal.data() + diagonal.size()};
}

double covariance_check(int d, Deformation q, const Eigen::MatrixXcd& transform, kernels::Exec exec) {
    if (transform.rows() != d || transform.cols() != d) {
        throw InvalidArgument("covariance_check: transform must be d x d");
    }
    const Eigen::MatrixXcd defect = transform * transform.adjoint() - Eigen::MatrixXcd::Identity(d, d);
    if (defect.cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("covariance_check: transform is not unitary");

    const OperatorSet ops = build_fn_multimode(d, q);
    std::vector<SparseC> base;
    for (const auto& c : ops.annihilators) base.push_back(c.cast<std::complex<double>>().sparseView());
    std::vector<SparseC> primed(d);
    for (int i = 0; i < d; ++i) {
        SparseC sum(ops.dim, ops.dim);
        for (int j = 0; j < d; ++j) sum += transform(i, j) * base[j];
        sum.prune(std::complex<double>(0.0), 0.0);
        primed[i] = std::move(sum);
    }
    double worst = 0.0;
    for (const auto& r : fn_relations(primed, ops.number_op, q.value(), exec)) worst = std::max(worst, r.residual);
    return worst;
}

Eigen::MatrixXcd random_unitary(int d, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd z(d, d);
    for (int col = 0; col < d; ++col) {
        for (int row = 0; row < d; ++row) z(row, col) = {normal(rng), normal(rng)};
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd unitary = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so the distribution is Haar.
    for (int k = 0; k < d; ++k) {
        const std::complex<double> diag = r(k, k);
        if (std::abs(diag) > 0.0) unitary.col(k) *= diag / std::abs(diag);
    }
    return unitary;
}

BuiltState build_state(const OperatorSet& ops, int n) {
    if (ops.modes != 1) throw InvalidArgument("build_state: single-mode operator set required");
    if (n < 0 || n >= ops.dim) throw InvalidArgument("build_state: n must lie in [0, dim)");
    double factorial = 1.0;
    for (int k = 1; k <= n; ++k) {
        factorial *= qnum::basic(ops.model, k, ops.q);
        if (factorial <= 0.0) {
            throw NonNormalizable(fmt::format("[{}]! = {} <= 0: state |{}> cannot be normalized", k, factorial, n));
        }
    }
    Eigen::VectorXd v = Eigen::VectorXd::Unit(ops.dim, 0);
    for (int k = 0; k < n; ++k) v = ops.creators.front() * v;
    v /= std::sqrt(factorial);
    const double deviation = (v - Eigen::VectorXd::Unit(ops.dim, n)).cwiseAbs().maxCoeff();
    return {std::move(v), deviation};
}

Eigen::MatrixXd rescale_to_undeformed(const OperatorSet& ops) {
    if (ops.modes != 1) throw InvalidArgument("rescale_to_undeformed: single-mode operator set required");
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(ops.dim);
    for (int n = 1; n < ops.dim; ++n) {
        const double g = qnum::basic(ops.model, n, ops.q);
        if (g > 0.0) weight(n) = std::sqrt(n / g);
    }
    return ops.annihilators.front() * weight.asDiagonal();
}

}  // namespace qfermi::fock
