#include "qfermi/check.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "qfermi/fdfuncs.hpp"
#include "qfermi/fock.hpp"
#include "qfermi/qcalc.hpp"
#include "qfermi/qnum.hpp"
#include "qfermi/thermo.hpp"

namespace qfermi::check {

namespace {

using Results = std::vector<CheckResult>;

const std::vector<double> kSubUnitQ{0.3, 0.5, 0.9};
const std::vector<double> kAllQ{0.3, 0.5, 0.9, 1.0, 1.5};

struct Recorder {
    std::string group;
    Results& out;

    void operator()(std::string name, bool pass, std::string detail) const {
        out.push_back({group, std::move(name), pass, std::move(detail)});
    }

    // Runs body; any exception is a failure carrying its message.
    void guarded(const std::string& name, const std::function<void()>& body) const {
        try {
            body();
        } catch (const std::exception& e) {
            (*this)(name, false, fmt::format("exception: {}", e.what()));
        }
    }
};

void qnum_group(const Recorder& rec) {
    rec.guarded("vpjc_recurrence", [&] {
        double worst = 0.0;
        for (double q : {0.1, 0.5, 0.9}) worst = std::max(worst, qnum::vpjc_recurrence_check(50, Deformation(q)));
        rec("vpjc_recurrence", worst <= 1e-14, fmt::format("max residual {:.3g}, n <= 50", worst));
    });
    rec.guarded("ground_and_first_levels", [&] {
        bool ok = true;
        for (double qv : kAllQ) {
            const Deformation q(qv);
            for (ModelId m : {ModelId::FN, ModelId::CKN, ModelId::PVC, ModelId::VPJC}) {
                ok = ok && qnum::basic(m, 0, q) == 0.0 && std::abs(qnum::basic(m, 1, q) - 1.0) <= 1e-15;
            }
        }
        rec("ground_and_first_levels", ok, "g_0 = 0, g_1 = 1");
    });
    rec.guarded("undeformed_limits", [&] {
        const Deformation one(1.0);
        bool ok = true;
        for (int n = 0; n <= 20; ++n) {
            const double alternating = (n % 2 == 0) ? 0.0 : 1.0;
            ok = ok && qnum::fn_spectrum(n, one) == n && qnum::vpjc_basic(n, one) == alternating &&
                 qnum::pvc_basic(n, one) == alternating;
        }
        rec("undeformed_limits", ok, "q = 1: N, and 0/1 alternation for PVC/VPJC");
    });
    rec.guarded("vpjc_sign_and_bounds", [&] {
        bool ok = true;
        for (double qv : kSubUnitQ) {
            for (int n = 1; n <= 60; ++n) {
                const double g = qnum::vpjc_basic(n, Deformation(qv));
                ok = ok && g > 0.0 && g <= 1.0 + 1e-15 && g >= (1.0 - qv) / (1.0 + qv) - 1e-15;
            }
        }
        for (double qv : {1.5, 2.0, 3.0}) {
            for (int n = 2; n <= 40; n += 2) ok = ok && qnum::vpjc_basic(n, Deformation(qv)) < 0.0;
        }
        rec("vpjc_sign_and_bounds", ok, "0<q<1: (1-q)/(1+q) <= g_n <= 1; q>1: g_even < 0");
    });
}

void fock_group(const Recorder& rec, const CheckOptions& options) {
    rec.guarded("fn_multimode_relations", [&] {
        double worst = 0.0;
        for (int d = 1; d <= 4; ++d) {
            for (double qv : kAllQ) {
                worst = std::max(worst, fock::check_algebra(fock::build_fn_multimode(d, Deformation(qv))).max_residual());
            }
        }
        rec("fn_multimode_relations", worst <= 1e-12, fmt::format("max residual {:.3g}, d <= 4", worst));
    });
    rec.guarded("single_mode_relations", [&] {
        double worst = 0.0;
        for (double qv : kSubUnitQ) {
            worst = std::max(worst, fock::check_algebra(fock::build_single_mode(ModelId::VPJC, Deformation(qv), 40)).max_residual());
            worst = std::max(worst, fock::check_algebra(fock::build_single_mode(ModelId::PVC, Deformation(qv), 40)).max_residual());
        }
        for (double qv : kAllQ) {
            worst = std::max(worst, fock::check_algebra(fock::build_single_mode(ModelId::CKN, Deformation(qv), 2)).max_residual());
        }
        rec("single_mode_relations", worst <= 1e-12, fmt::format("max residual {:.3g} below truncation", worst));
    });
    rec.guarded("spectrum_consistency", [&] {
        double worst = 0.0;
        for (double qv : kSubUnitQ) {
            const Deformation q(qv);
            for (ModelId m : {ModelId::VPJC, ModelId::PVC}) {
                const auto diag = fock::spectrum_of_number_operator(fock::build_single_mode(m, q, 40));
                for (int n = 0; n < 40; ++n) {
                    const double g = qnum::basic(m, n, q);
                    worst = std::max(worst, std::abs(diag[n] - g) / std::max(1.0, std::abs(g)));
                }
            }
            for (int d = 1; d <= 4; ++d) {
                const auto ops = fock::build_fn_multimode(d, q);
                const auto diag = fock::spectrum_of_number_operator(ops);
                for (int b = 0; b < ops.dim; ++b) {
                    worst = std::max(worst, std::abs(diag[b] - qnum::fn_spectrum(static_cast<int>(ops.number_op(b)), q)));
                }
            }
        }
        rec("spectrum_consistency", worst <= 1e-13, fmt::format("max deviation {:.3g}", worst));
    });
    rec.guarded("norm_audit", [&] {
        const auto bad = fock::check_algebra(fock::build_single_mode(ModelId::VPJC, Deformation(2.0), 40)).norm_violations;
        bool even_only = bad.size() == 19;
        for (const auto& v : bad) even_only = even_only && v.level % 2 == 0 && v.g < 0.0;
        bool clean = true;
        for (double qv : {0.1, 0.3, 0.5, 0.9, 1.0}) {
            clean = clean && fock::build_single_mode(ModelId::VPJC, Deformation(qv), 40).norm_violations.empty();
        }
        rec("norm_audit", even_only && clean,
            fmt::format("q=2 flags {} even levels; 0<q<=1 none up to dim 40", bad.size()));
    });
    rec.guarded("u_d_covariance", [&] {
        double worst = 0.0;
        for (int d = 2; d <= 3; ++d) {
            worst = std::max(worst, fock::covariance_check(d, Deformation(0.5), fock::random_unitary(d, options.seed + d)));
        }
        rec("u_d_covariance", worst <= 1e-10, fmt::format("random unitary, seed {}, residual {:.3g}", options.seed, worst));
    });
    rec.guarded("ckn_rescaling", [&] {
        double worst = 0.0;
        for (double qv : kAllQ) {
            const Eigen::MatrixXd f = fock::rescale_to_undeformed(fock::build_single_mode(ModelId::CKN, Deformation(qv), 2));
            const Eigen::MatrixXd anti = f * f.transpose() + f.transpose() * f - Eigen::MatrixXd::Identity(2, 2);
            worst = std::max({worst, anti.cwiseAbs().maxCoeff(), (f * f).cwiseAbs().maxCoeff()});
        }
        rec("ckn_rescaling", worst <= 1e-13, fmt::format("f f^+ + f^+ f = 1, f^2 = 0: {:.3g}", worst));
    });
    rec.guarded("state_construction", [&] {
        const auto ops = fock::build_single_mode(ModelId::VPJC, Deformation(0.5), 16);
        double worst = 0.0;
        for (int n = 0; n < 16; ++n) worst = std::max(worst, fock::build_state(ops, n).deviation);
        bool rejects = false;
        try {
            fock::build_state(fock::build_single_mode(ModelId::VPJC, Deformation(1.0), 4), 2);
        } catch (const NonNormalizable&) {
            rejects = true;
        }
        rec("state_construction", worst <= 1e-12 && rejects,
            fmt::format("(c^+)^n|0>/sqrt([n]!) = |n> to {:.3g}; q=1 rejects n=2", worst));
    });

    if (options.model) {
        for (double qv : options.q_list) {
            const std::string name = fmt::format("{}_representation_q{}", to_string(*options.model), qv);
            rec.guarded(name, [&] {
                const Deformation q(qv);
                const fock::OperatorSet ops = (*options.model == ModelId::FN)
                                                  ? fock::build_fn_multimode(std::min(options.dim, 4), q)
                                                  : fock::build_single_mode(*options.model, q,
                                                                            *options.model == ModelId::CKN ? 2 : options.dim);
                const auto report = fock::check_algebra(ops);
                std::string violations;
                for (const auto& v : report.norm_violations) {
                    violations += fmt::format("{}negative norm at n={} (g={:.6g})", violations.empty() ? "" : "; ", v.level, v.g);
                }
                const bool norm_ok = report.norm_violations.empty() || !options.strict;
                const bool relations_ok = !report.norm_violations.empty() || report.max_residual() <= 1e-12;
                rec(name, norm_ok && relations_ok,
                    violations.empty() ? fmt::format("max residual {:.3g}", report.max_residual()) : violations);
            });
        }
    }
}

void qcalc_group(const Recorder& rec, const CheckOptions& options) {
    rec.guarded("monomial_eigen_action", [&] {
        double worst = 0.0;
        for (double qv : {0.3, 0.5, 0.9, 1.0}) {
            const Deformation q(qv);
            for (ModelId m : {ModelId::PVC, ModelId::VPJC}) {
                for (int n = 0; n <= 20; ++n) {
                    const auto image = qcalc::jd_polynomial(m, qcalc::Polynomial::monomial(n), q);
                    const auto expected = n == 0 ? qcalc::Polynomial{0.0} : qcalc::Polynomial::monomial(n - 1, qnum::basic(m, n, q));
                    worst = std::max(worst, (image - expected).max_abs_coefficient());
                }
            }
        }
        rec("monomial_eigen_action", worst <= 1e-14, fmt::format("D x^n = [n] x^(n-1), n <= 20: {:.3g}", worst));
    });
    rec.guarded("vpjc_operator_identity", [&] {
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::vector<qcalc::Polynomial> tests;
        for (int n = 0; n <= 6; ++n) tests.push_back(qcalc::Polynomial::monomial(n));
        for (int k = 0; k < 8; ++k) {
            std::vector<double> c(7);
            for (double& a : c) a = coeff(rng);
            tests.emplace_back(c);
        }
        double worst = 0.0;
        for (double qv : {0.3, 0.5, 0.9, 1.0}) {
            worst = std::max(worst, qcalc::jd_operator_identity_residual(ModelId::VPJC, Deformation(qv), tests));
        }
        rec("vpjc_operator_identity", worst <= 1e-14, fmt::format("D x + q x D = 1, degree <= 6: {:.3g}", worst));
    });
    rec.guarded("pointwise_vs_polynomial", [&] {
        const qcalc::Polynomial p{0.5, -1.0, 2.0, 0.25, -0.75};
        double worst = 0.0;
        for (double qv : kSubUnitQ) {
            const Deformation q(qv);
            const auto dp = qcalc::jd_polynomial(ModelId::VPJC, p, q);
            for (double x : {-10.0, -3.0, -0.1, 0.1, 0.5, 2.0, 10.0}) {
                const double pointwise = qcalc::vpjc_jd_value(p, x, q);
                worst = std::max(worst, std::abs(pointwise - dp(x)) / std::max(1e-300, std::abs(dp(x))));
            }
        }
        rec("pointwise_vs_polynomial", worst <= 1e-12, fmt::format("relative {:.3g} on |x| in [0.1, 10]", worst));
    });
    rec.guarded("reflection", [&] {
        const qcalc::Polynomial p{1.0, 2.0, -3.0, 0.5};
        double worst = 0.0;
        for (double qv : kSubUnitQ) {
            const auto reflected = p.scaled_argument(-qv);
            for (double x : {-2.0, -0.5, 0.3, 1.7}) worst = std::max(worst, std::abs(reflected(x) - p(-qv * x)));
        }
        rec("reflection", worst <= 1e-13, fmt::format("(-q)^N p(x) = p(-q x): {:.3g}", worst));
    });
    rec.guarded("non_classical_limit", [&] {
        const double value = qcalc::vpjc_jd_value([](double x) { return x * x; }, 1.0, Deformation(1.0));
        rec("non_classical_limit", value == 0.0, fmt::format("D x^2 at x=1, q=1 is {} (d/dx gives 2)", value));
    });
}

void fdfuncs_group(const Recorder& rec, const CheckOptions& options) {
    rec.guarded("substitution_identity", [&] {
        double worst = 0.0;
        for (double qv : kSubUnitQ) {
            for (double z : {0.1, 0.5, 0.9 / qv}) {
                for (double order : {1.5, 2.5}) {
                    const double a = fdfuncs::f_gen(order, Deformation(qv), z, 1e-14).value;
                    const double b = fdfuncs::f_gen(order, Deformation(1.0), qv * z, 1e-14).value;
                    worst = std::max(worst, std::abs(a - b));
                }
            }
        }
        rec("substitution_identity", worst <= 1e-13, fmt::format("f_n(q,z) = f_n(1,qz): {:.3g}", worst));
    });
    rec.guarded("error_bound_soundness", [&] {
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> uq(0.1, 1.0), uw(0.01, 1.0), uo(0.5, 4.0);
        int failures = 0;
        for (int k = 0; k < 100; ++k) {
            const double q = uq(rng);
            const double z = uw(rng) / q;
            const double order = uo(rng);
            const auto v = fdfuncs::f_gen(order, Deformation(q), z, 1e-12);
            const double w = q * z;
            const double doubled = v.method == fdfuncs::SeriesMethod::direct
                                       ? fdfuncs::alternating_partial_sum(order, w, 2 * v.terms_used)
                                       : fdfuncs::alternating_accelerated_sum(order, w, 2 * v.terms_used);
            if (std::abs(doubled - v.value) > v.error_bound) ++failures;
        }
        rec("error_bound_soundness", failures == 0, fmt::format("{} / 100 random points violate the bound", failures));
    });
    rec.guarded("monotone_in_z", [&] {
        bool ok = true;
        for (double qv : kSubUnitQ) {
            double prev_f = -1.0, prev_h = -1.0;
            for (int k = 1; k < 50; ++k) {
                const double z = k / 50.0 * qv;  // inside both convergence discs
                const double f = fdfuncs::f_gen(2.5, Deformation(qv), z, 1e-13).value;
                const double h = fdfuncs::h_gen(2.5, z, Deformation(qv), 1e-13).value;
                ok = ok && f > prev_f && h > prev_h;
                prev_f = f;
                prev_h = h;
            }
        }
        rec("monotone_in_z", ok, "f_5/2 and h(5/2) strictly increasing in z");
    });
    rec.guarded("order_relation", [&] {
        // Each term of f_5/2 is bounded by the matching term of f_3/2; the sums themselves satisfy
        // f_5/2 >= f_3/2 on (0, 1/q], since the leading terms agree and the subtracted terms shrink.
        bool termwise = true;
        bool sums_ordered = true;
        for (double qv : kSubUnitQ) {
            for (double frac : {0.1, 0.5, 0.99}) {
                const double x = frac;
                double power = 1.0;
                for (int l = 1; l <= 200; ++l) {
                    power *= x;
                    termwise = termwise && power / std::pow(l, 2.5) <= power / std::pow(l, 1.5);
                }
                const double z = frac / qv;
                sums_ordered = sums_ordered && fdfuncs::f_gen(2.5, Deformation(qv), z, 1e-13).value >=
                                                   fdfuncs::f_gen(1.5, Deformation(qv), z, 1e-13).value;
            }
        }
        rec("order_relation", termwise && sums_ordered,
            fmt::format("|term_l(5/2)| <= |term_l(3/2)|: {}; sums f_5/2 >= f_3/2: {}", termwise, sums_ordered));
    });
    rec.guarded("undeformed_values", [&] {
        const double ln2 = fdfuncs::standard_fd(1.0, 1.0, 1e-10).value;
        const double ln15 = fdfuncs::standard_fd(1.0, 0.5, 1e-13).value;
        const double err = std::max(std::abs(ln2 - std::log(2.0)), std::abs(ln15 - std::log(1.5)));
        rec("undeformed_values", err <= 1e-10, fmt::format("f_1(1) = ln 2, f_1(1/2) = ln 1.5: {:.3g}", err));
    });
}

void thermo_group(const Recorder& rec) {
    rec.guarded("undeformed_limits", [&] {
        double worst = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double eta = -10.0 + 0.1 * k;
            const double fd = 1.0 / (std::exp(eta) + 1.0);
            worst = std::max({worst, std::abs(thermo::fn_distribution(eta, Deformation(1.0)) - fd),
                              std::abs(thermo::ckn_distribution(eta, Deformation(1.0)) - fd),
                              std::abs(thermo::q1_limit_distribution(eta) - fd)});
        }
        rec("undeformed_limits", worst <= 1e-14, fmt::format("FN, CKN, limit vs Fermi-Dirac: {:.3g}", worst));
    });
    rec.guarded("vpjc_zero_crossings", [&] {
        double worst = 0.0;
        for (double qv : {1.0 / 3.0, 0.5, 0.9}) {
            worst = std::max(worst, thermo::vpjc_distribution(std::log((1.0 - qv) / 2.0), Deformation(qv)));
        }
        rec("vpjc_zero_crossings", worst <= 1e-12, fmt::format("n(ln((1-q)/2)) = {:.3g}", worst));
    });
    rec.guarded("monotone_in_q", [&] {
        bool ok = true;
        for (double eta : {0.5, 1.0, 2.0}) {
            const std::vector<double> qs{0.9, 0.5, 0.3};  // decreasing q
            for (std::size_t k = 1; k < qs.size(); ++k) {
                const Deformation hi(qs[k - 1]), lo(qs[k]);
                ok = ok && thermo::ckn_distribution(eta, lo) > thermo::ckn_distribution(eta, hi);
                ok = ok && thermo::fn_distribution(eta, lo) < thermo::fn_distribution(eta, hi);
                ok = ok && thermo::vpjc_distribution(eta, lo) < thermo::vpjc_distribution(eta, hi);
            }
        }
        rec("monotone_in_q", ok, "CKN up, FN and VPJC down as q decreases");
    });
    rec.guarded("occupation_ratio", [&] {
        double worst = 0.0;
        for (double qv : kSubUnitQ) {
            for (double eta : {0.5, 1.0, 2.0, 4.0}) {
                const Deformation q(qv);
                worst = std::max({worst,
                                  std::abs(thermo::occupation_ratio_solve(ModelId::VPJC, eta, q) - thermo::vpjc_distribution(eta, q)),
                                  std::abs(thermo::occupation_ratio_solve(ModelId::PVC, eta, q) - thermo::pvc_distribution(eta, q))});
            }
        }
        rec("occupation_ratio", worst <= 1e-10, fmt::format("bisection vs closed form: {:.3g}", worst));
    });
    rec.guarded("trace_identity", [&] {
        double truncated = 0.0, exact = 0.0;
        for (double qv : kSubUnitQ) {
            for (double eta : {1.0, 2.0, 4.0}) {
                const Deformation q(qv);
                truncated = std::max({truncated, thermo::exact_trace_occupation(ModelId::VPJC, q, eta, 60).identity_residual,
                                      thermo::exact_trace_occupation(ModelId::PVC, q, eta, 60).identity_residual});
                exact = std::max(exact, thermo::exact_trace_occupation(ModelId::CKN, q, eta, 0).identity_residual);
                for (int d = 1; d <= 4; ++d) {
                    exact = std::max(exact, thermo::exact_trace_occupation(ModelId::FN, q, eta, d).identity_residual);
                }
            }
        }
        rec("trace_identity", truncated <= 1e-6 && exact <= 1e-13,
            fmt::format("truncated {:.3g}, exact {:.3g}", truncated, exact));
    });
    rec.guarded("virial", [&] {
        const double a2 = std::pow(2.0, -2.5);
        const double a3 = 1.0 / 8.0 - 2.0 * std::pow(3.0, -2.5);
        double worst2 = 0.0, worst3 = 0.0;
        for (double qv : {0.3, 0.5, 0.9, 1.5}) {
            const auto fn = thermo::virial_fit(ModelId::FN, Deformation(qv), 3);
            const auto ckn = thermo::virial_fit(ModelId::CKN, Deformation(qv), 3);
            worst2 = std::max({worst2, std::abs(fn[1] - a2), std::abs(ckn[1] - a2)});
            worst3 = std::max({worst3, std::abs(fn[2] - a3), std::abs(ckn[2] - a3)});
        }
        rec("virial", worst2 <= 1e-10 && worst3 <= 1e-9, fmt::format("a2 err {:.3g}, a3 err {:.3g}", worst2, worst3));
    });
    rec.guarded("equal_fugacity_ordering", [&] {
        bool ok = true;
        for (double z : {0.2, 0.5, 0.8}) {
            const auto deformed = thermo::fn_eos(Deformation(0.5), z);
            const auto plain = thermo::fn_eos(Deformation(1.0), z);
            ok = ok && deformed.entropy < plain.entropy && deformed.pressure < plain.pressure;
        }
        rec("equal_fugacity_ordering", ok, "FN q=0.5 entropy and pressure below q=1");
    });
    rec.guarded("chemical_potential", [&] {
        double rel = 0.0;
        for (double qv : {0.5, 1.0, 2.0}) {
            const double closed = thermo::fn_mu_lowT(0.05, Deformation(qv));
            rel = std::max(rel, std::abs(thermo::fn_mu_numeric(0.05, Deformation(qv)) - closed) / std::abs(closed));
        }
        const double shift = thermo::fn_mu_numeric(0.05, Deformation(1.0)) - thermo::fn_mu_numeric(0.05, Deformation(2.0));
        const double shift_err = std::abs(shift - 0.05 * std::log(2.0));
        rec("chemical_potential", rel <= 1e-3 && shift_err <= 1e-4,
            fmt::format("relative {:.3g}, q-shift error {:.3g}", rel, shift_err));
    });
    rec.guarded("fn_vs_pvc", [&] {
        const auto cmp = thermo::compare_fn_pvc(Deformation(0.5), 0.3);
        rec("fn_vs_pvc", cmp.fn_pressure_lower,
            fmt::format("pressure FN {:.6g} vs PVC {:.6g}; entropy FN {:.6g} vs PVC {:.6g} ({})", cmp.fn.pressure,
                        cmp.pvc.pressure, cmp.fn.entropy, cmp.pvc.entropy,
                        cmp.fn_entropy_lower ? "FN lower" : "FN higher, flagged"));
    });
}

}  // namespace

const std::vector<std::string>& group_names() {
    static const std::vector<std::string> names{"qnum", "fock", "qcalc", "fdfuncs", "thermo"};
    return names;
}

std::vector<CheckResult> run_checks(const CheckOptions& options) {
    if (options.group && std::find(group_names().begin(), group_names().end(), *options.group) == group_names().end()) {
        throw InvalidArgument(fmt::format("unknown check group '{}'", *options.group));
    }
    Results out;
    auto wanted = [&](const char* g) { return !options.group || *options.group == g; };
    if (wanted("qnum")) qnum_group({"qnum", out});
    if (wanted("fock")) fock_group({"fock", out}, options);
    if (wanted("qcalc")) qcalc_group({"qcalc", out}, options);
    if (wanted("fdfuncs")) fdfuncs_group({"fdfuncs", out}, options);
    if (wanted("thermo")) thermo_group({"thermo", out});
    return out;
}

std::string format_line(const CheckResult& result) {
    std::string group = result.group;
    std::transform(group.begin(), group.end(), group.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return fmt::format("{} {}: {} ({})", group, result.name, result.pass ? "PASS" : "FAIL", result.detail);
}

}  // namespace qfermi::check
