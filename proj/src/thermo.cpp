#include "qfermi/thermo.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>

#include <fmt/format.h>

#include "qfermi/fock.hpp"

namespace qfermi::thermo {

namespace {

void require_open_unit_interval(Deformation q, const char* what) {
    if (q.is_undeformed()) {
        throw InvalidDeformation(fmt::format("{}: q = 1 is excluded; use q1_limit_distribution", what));
    }
    if (q.value() > 1.0) throw InvalidDeformation(fmt::format("{}: defined for 0 < q < 1", what));
}

}  // namespace

double fn_distribution(double eta, Deformation q) { return q.value() / (std::exp(eta) + q.value()); }

double ckn_distribution(double eta, Deformation q) { return fn_distribution(eta, q.inverse()); }

double q1_limit_distribution(double eta) { return 1.0 / (std::exp(eta) + 1.0); }

double pvc_distribution(double eta, Deformation q) {
    require_open_unit_interval(q, "pvc_distribution");
    const double qv = q.value();
    const double log_q = std::log(qv);
    if (std::abs(eta + log_q) <= kSingularWindow) {
        throw SingularPoint(fmt::format("pvc_distribution is singular at eta = -ln q = {}", -log_q));
    }
    double log_ratio;
    if (eta > -log_q) {
        const double e = std::exp(-eta);
        log_ratio = std::log1p(-e / qv) - std::log1p(qv * e);
    } else {
        const double e = std::exp(eta);
        log_ratio = std::log(1.0 / qv - e) - std::log(e + qv);
    }
    return std::abs(log_ratio) / (2.0 * std::abs(log_q));
}

double vpjc_distribution(double eta, Deformation q) {
    require_open_unit_interval(q, "vpjc_distribution");
    if (std::abs(eta) <= kSingularWindow) {
        throw SingularPoint("vpjc_distribution is discontinuous at eta = 0");
    }
    const double qv = q.value();
    double log_ratio;
    if (eta > 0.0) {
        const double e = std::exp(-eta);
        log_ratio = std::log1p(-e) - std::log1p(qv * e);
    } else {
        const double e = std::exp(eta);
        log_ratio = std::log1p(-e) - std::log(e + qv);
    }
    return std::abs(log_ratio) / std::abs(std::log(qv));
}

double distribution(ModelId model, double eta, Deformation q) {
    switch (model) {
        case ModelId::FN: return fn_distribution(eta, q);
        case ModelId::CKN: return ckn_distribution(eta, q);
        case ModelId::PVC: return pvc_distribution(eta, q);
        case ModelId::VPJC: return vpjc_distribution(eta, q);
        default: throw InvalidArgument("distribution: no distribution function for this model");
    }
}

std::vector<double> singular_points(ModelId model, Deformation q) {
    if (q.is_undeformed()) return {};
    switch (model) {
        case ModelId::PVC: return {-std::log(q.value())};
        case ModelId::VPJC: return {0.0};
        default: return {};
    }
}

double occupation_ratio_solve(ModelId model, double eta, Deformation q) {
    if (model != ModelId::PVC && model != ModelId::VPJC) {
        throw InvalidArgument("occupation_ratio_solve: model must be PVC or VPJC");
    }
    require_open_unit_interval(q, "occupation_ratio_solve");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("occupation_ratio_solve: requires finite eta > 0");
    const double qv = q.value();
    const double target = std::exp(-eta);

    // [n]/[n+1] as a function of y = q^n on the selected parity branch.
    std::function<double(double)> ratio;
    if (model == ModelId::VPJC) {
        ratio = [qv](double y) { return (1.0 - y) / (1.0 + qv * y); };
    } else {
        if (std::abs(eta + std::log(qv)) <= kSingularWindow) {
            throw SingularPoint("occupation_ratio_solve: eta = -ln q is singular for PVC");
        }
        if (target < qv) {
            ratio = [qv](double y) { return qv * (1.0 - y * y) / (1.0 + qv * qv * y * y); };
        } else {
            ratio = [qv](double y) { return qv * (1.0 + y * y) / (1.0 - qv * qv * y * y); };
        }
    }
    auto residual = [&](double n) { return ratio(std::pow(qv, n)) - target; };

    double lo = 0.0;
    double hi = 1.0;
    const double at_zero = residual(lo);
    if (at_zero == 0.0) return 0.0;
    while (std::signbit(residual(hi)) == std::signbit(at_zero)) {
        hi *= 2.0;
        if (hi > 1e6) {
            throw NoSolution(fmt::format("[n]/[n+1] = e^-{} has no root with n >= 0 on this branch", eta));
        }
    }
    for (int iter = 0; iter < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (std::signbit(residual(mid)) == std::signbit(at_zero)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TraceAverages exact_trace_occupation(ModelId model, Deformation q, double eta, int size, kernels::Exec exec) {
    fock::OperatorSet ops = [&] {
        switch (model) {
            case ModelId::VPJC:
            case ModelId::PVC:
                if (!(eta > 0.0)) throw InvalidArgument("exact_trace_occupation: unbounded models need eta > 0");
                if (size < 1) throw InvalidArgument("exact_trace_occupation: n_max must be >= 1");
                return fock::build_single_mode(model, q, size + 1);
            case ModelId::CKN: return fock::build_single_mode(model, q, 2);
            case ModelId::FN: return fock::build_fn_multimode(size, q);
            default: throw InvalidArgument("exact_trace_occupation: unsupported model");
        }
    }();

    Eigen::VectorXd deformed = Eigen::VectorXd::Zero(ops.dim);
    Eigen::VectorXd shifted = Eigen::VectorXd::Zero(ops.dim);
    for (std::size_t i = 0; i < ops.annihilators.size(); ++i) {
        deformed += (ops.creators[i] * ops.annihilators[i]).diagonal();
        shifted += (ops.annihilators[i] * ops.creators[i]).diagonal();
    }
    const std::span<const double> levels(ops.number_op.data(), ops.dim);
    const auto avg_deformed = kernels::gibbs_average(levels, {deformed.data(), static_cast<std::size_t>(deformed.size())}, eta, exec);
    const auto avg_number = kernels::gibbs_average(levels, levels, eta, exec);
    const auto avg_shifted = kernels::gibbs_average(levels, {shifted.data(), static_cast<std::size_t>(shifted.size())}, eta, exec);

    TraceAverages out{};
    out.deformed_occupation = avg_deformed.mean;
    out.occupation = avg_number.mean;
    out.shifted = avg_shifted.mean;
    out.identity_residual = std::abs(out.shifted - std::exp(eta) * out.deformed_occupation);
    out.top_state_weight = std::exp(-eta * ops.number_op.maxCoeff()) / avg_number.partition;
    return out;
}

EosPoint fn_eos(Deformation q, double z, double tol) {
    if (!(z > 0.0)) throw InvalidArgument("fn_eos: fugacity must be positive");
    const double f52 = fdfuncs::f_gen(2.5, q, z, tol).value;
    const double f32 = fdfuncs::f_gen(1.5, q, z, tol).value;
    return {f52, f32, 1.5 * f52, 2.5 * f52 / f32 - std::log(z)};
}

EosPoint ckn_eos(Deformation q, double z, double tol) { return fn_eos(q.inverse(), z, tol); }

EosPoint pvc_eos(Deformation q, double z, double multiplicity, double tol) {
    if (!(z > 0.0)) throw InvalidArgument("pvc_eos: fugacity must be positive");
    if (!(multiplicity > 0.0)) throw InvalidArgument("pvc_eos: multiplicity must be positive");
    const double h52 = fdfuncs::h_gen(2.5, z, q, tol).value;
    const double h32 = fdfuncs::h_gen(1.5, z, q, tol).value;
    return {h52, h32, 1.5 * h52, multiplicity * (2.5 * h52 - h32)};
}

namespace {

// Truncated power series with c[0] = 0; compose(outer, inner) = outer(inner(x)).
using Series = std::vector<double>;

Series multiply(const Series& a, const Series& b, int order) {
    Series out(order + 1, 0.0);
    for (int i = 0; i <= order; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Series compose(const Series& outer, const Series& inner, int order) {
    Series out(order + 1, 0.0);
    Series power(order + 1, 0.0);
    power[0] = 1.0;
    for (int k = 1; k <= order; ++k) {
        power = multiply(power, inner, order);
        for (int m = 0; m <= order; ++m) out[m] += outer[k] * power[m];
    }
    return out;
}

Series revert(const Series& f, int order) {
    Series inverse(order + 1, 0.0);
    inverse[1] = 1.0 / f[1];
    for (int k = 2; k <= order; ++k) {
        const Series identity = compose(f, inverse, k);
        inverse[k] = -identity[k] / f[1];
    }
    return inverse;
}

}  // namespace

std::vector<double> virial_fit(ModelId model, Deformation q, int orders) {
    if (model != ModelId::FN && model != ModelId::CKN) throw InvalidArgument("virial_fit: model must be FN or CKN");
    if (orders < 2 || orders > kMaxVirialOrder) {
        throw InvalidArgument(fmt::format("virial_fit: orders must lie in [2, {}]", kMaxVirialOrder));
    }
    const double s = (model == ModelId::FN) ? q.value() : 1.0 / q.value();
    Series pressure(orders + 1, 0.0);
    Series density(orders + 1, 0.0);
    for (int l = 1; l <= orders; ++l) {
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        pressure[l] = sign * std::pow(s, l) / std::pow(static_cast<double>(l), 2.5);
        density[l] = sign * std::pow(s, l) / std::pow(static_cast<double>(l), 1.5);
    }
    const Series z_of_rho = revert(density, orders);
    const Series p_of_rho = compose(pressure, z_of_rho, orders);
    std::vector<double> a(p_of_rho.begin() + 1, p_of_rho.end());
    a[0] = pressure[1] / density[1];
    return a;
}

double fn_mu_lowT(double t, Deformation q) {
    if (!(t > 0.0) || t > 0.2) throw InvalidArgument("fn_mu_lowT: requires 0 < t <= 0.2");
    return -t * std::log(q.value()) + (1.0 - std::numbers::pi * std::numbers::pi / 12.0 * t * t);
}

double fn_mu_numeric(double t, Deformation q, int sommerfeld_terms) {
    if (!(t > 0.0) || t > 0.2) throw InvalidArgument("fn_mu_numeric: requires 0 < t <= 0.2");
    if (sommerfeld_terms < 1 || sommerfeld_terms > 3) {
        throw InvalidArgument("fn_mu_numeric: sommerfeld_terms must be 1, 2 or 3");
    }
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    // x = t ln(qz) = t L, so L^-2 = t^2 / x^2.
    auto density_defect = [&](double x) {
        const double inv_l2 = t * t / (x * x);
        double bracket = 1.0;
        if (sommerfeld_terms >= 2) bracket += pi2 / 8.0 * inv_l2;
        if (sommerfeld_terms >= 3) bracket += 7.0 * pi2 * pi2 / 640.0 * inv_l2 * inv_l2;
        return std::pow(x, 1.5) * bracket - 1.0;
    };
    double lo = 0.5;
    double hi = 1.5;
    if (!(density_defect(lo) < 0.0 && density_defect(hi) > 0.0)) {
        throw ConvergenceError("fn_mu_numeric: density equation is not bracketed");
    }
    for (int iter = 0; iter < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon(); ++iter) {
        const double mid = 0.5 * (lo + hi);
        (density_defect(mid) < 0.0 ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    return x - t * std::log(q.value());
}

double ckn_mu_lowT(double t, Deformation q) { return fn_mu_lowT(t, q.inverse()); }

double ckn_mu_numeric(double t, Deformation q, int sommerfeld_terms) {
    return fn_mu_numeric(t, q.inverse(), sommerfeld_terms);
}

FnPvcComparison compare_fn_pvc(Deformation q, double z, double multiplicity, double tol) {
    FnPvcComparison out{fn_eos(q, z, tol), pvc_eos(q, z, multiplicity, tol), false, false};
    out.fn_pressure_lower = out.fn.pressure < out.pvc.pressure;
    out.fn_entropy_lower = out.fn.entropy < out.pvc.entropy;
    return out;
}

}  // namespace qfermi::thermo
