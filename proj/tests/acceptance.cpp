// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qfermi/cli.hpp"
#include "qfermi/fock.hpp"
#include "qfermi/qcalc.hpp"
#include "qfermi/qnum.hpp"
#include "qfermi/thermo.hpp"

using namespace qfermi;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

// Root of the VPJC curve from the emitted figure table: take the sampled minimum of
// the column, then bisect the signed logarithm inside the neighbouring samples.
Verdict crossing_from_curve(const cli::Table& table, std::size_t column, double q, double want, double tol) {
    std::size_t best = 1;
    for (std::size_t k = 1; k + 1 < table.rows.size(); ++k) {
        const double v = table.rows[k][column];
        if (table.rows[k][0] < 0.0 && !std::isnan(v) && v < table.rows[best][column]) best = k;
    }
    double lo = table.rows[best - 1][0], hi = table.rows[best + 1][0];
    auto signed_log = [q](double eta) { return std::log(std::abs(std::exp(eta) - 1.0) / (std::exp(eta) + q)); };
    if (signed_log(lo) * signed_log(hi) > 0.0) return {false, fmt::format("no sign change in [{}, {}]", lo, hi)};
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (signed_log(lo) * signed_log(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double root = 0.5 * (lo + hi);
    return {std::abs(root - want) <= tol, fmt::format("q={:.4g}: root {:.6f}, target {:.4f} +- {:g}", q, root, want, tol)};
}

Verdict zero_crossing() {
    cli::RunConfig config;
    config.group = "fig2";
    const auto table = cli::cmd_figure(config);
    const auto third = crossing_from_curve(table, 1, 1.0 / 3.0, -1.0986, 7e-3);
    const auto half = crossing_from_curve(table, 2, 0.5, -1.3863, 1e-3);
    return {third.pass && half.pass, half.detail + "; " + third.detail};
}

Verdict undeformed_limits() {
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double eta = -10.0 + 0.1 * k;
        const double fd = 1.0 / (std::exp(eta) + 1.0);
        worst = std::max({worst, std::abs(thermo::fn_distribution(eta, Deformation(1.0)) - fd),
                          std::abs(thermo::ckn_distribution(eta, Deformation(1.0)) - fd),
                          std::abs(thermo::q1_limit_distribution(eta) - fd)});
    }
    return {worst <= 1e-14, fmt::format("max deviation {:.3g} over 201 points", worst)};
}

Verdict virial() {
    const double a2 = std::pow(2.0, -2.5);
    const double a3 = 0.125 - 2.0 * std::pow(3.0, -2.5);
    double err2 = 0.0, err3 = 0.0;
    double lo2 = 1e300, hi2 = -1e300, lo3 = 1e300, hi3 = -1e300;
    for (double qv : {0.3, 0.5, 0.9, 1.5}) {
        const auto fn = thermo::virial_fit(ModelId::FN, Deformation(qv), 3);
        const auto ckn = thermo::virial_fit(ModelId::CKN, Deformation(qv), 3);
        err2 = std::max(err2, std::abs(fn[1] - a2));
        err3 = std::max(err3, std::abs(ckn[2] - a3));
        lo2 = std::min(lo2, fn[1]);
        hi2 = std::max(hi2, fn[1]);
        lo3 = std::min(lo3, ckn[2]);
        hi3 = std::max(hi3, ckn[2]);
    }
    const double spread = std::max(hi2 - lo2, hi3 - lo3);
    return {err2 <= 1e-10 && err3 <= 1e-9 && spread <= 1e-10,
            fmt::format("a2 err {:.3g}, a3 err {:.3g}, spread {:.3g}", err2, err3, spread)};
}

Verdict algebra_residuals() {
    double worst = 0.0;
    for (double qv : {0.3, 0.5, 0.9, 1.0, 1.5}) {
        const Deformation q(qv);
        for (int d = 1; d <= 4; ++d) worst = std::max(worst, fock::check_algebra(fock::build_fn_multimode(d, q)).max_residual());
        worst = std::max(worst, fock::check_algebra(fock::build_single_mode(ModelId::CKN, q, 2)).max_residual());
        if (qv < 1.0) {
            for (ModelId m : {ModelId::PVC, ModelId::VPJC}) {
                for (int dim : {2, 10, 40}) {
                    worst = std::max(worst, fock::check_algebra(fock::build_single_mode(m, q, dim)).max_residual());
                }
            }
        }
    }
    return {worst <= 1e-12, fmt::format("max residual {:.3g}", worst)};
}

Verdict spectrum_consistency() {
    double worst = 0.0;
    for (double qv : {0.3, 0.5, 0.9, 1.0, 1.5}) {
        const Deformation q(qv);
        if (qv < 1.0) {
            for (ModelId m : {ModelId::PVC, ModelId::VPJC}) {
                for (int dim = 2; dim <= 40; ++dim) {
                    const auto diag = fock::spectrum_of_number_operator(fock::build_single_mode(m, q, dim));
                    for (int n = 0; n < dim; ++n) {
                        const double g = qnum::basic(m, n, q);
                        worst = std::max(worst, std::abs(diag[n] - g) / std::max(1.0, std::abs(g)));
                    }
                }
            }
        }
        const auto ckn = fock::spectrum_of_number_operator(fock::build_single_mode(ModelId::CKN, q, 2));
        for (int n = 0; n < 2; ++n) worst = std::max(worst, std::abs(ckn[n] - qnum::ckn_spectrum(n, q)));
        for (int d = 1; d <= 4; ++d) {
            const auto ops = fock::build_fn_multimode(d, q);
            const auto diag = fock::spectrum_of_number_operator(ops);
            for (int b = 0; b < ops.dim; ++b) {
                worst = std::max(worst, std::abs(diag[b] - qnum::fn_spectrum(static_cast<int>(ops.number_op(b)), q)));
            }
        }
    }
    return {worst <= 1e-13, fmt::format("max deviation {:.3g}", worst)};
}

Verdict jackson_exactness() {
    double coeff_err = 0.0, identity = 0.0;
    std::vector<qcalc::Polynomial> tests;
    for (int n = 0; n <= 6; ++n) tests.push_back(qcalc::Polynomial::monomial(n));
    tests.push_back(qcalc::Polynomial{0.5, -1.0, 2.0, 0.25, -3.0, 1.0, 0.75});
    for (double qv : {0.3, 0.5, 0.9}) {
        const Deformation q(qv);
        for (ModelId m : {ModelId::PVC, ModelId::VPJC}) {
            for (int n = 0; n <= 20; ++n) {
                const auto d = qcalc::jd_polynomial(m, qcalc::Polynomial::monomial(n), q);
                const double g = qnum::basic(m, n, q);
                for (int k = 0; k <= d.degree(); ++k) {
                    const double want = k == n - 1 ? g : 0.0;
                    coeff_err = std::max(coeff_err, std::abs(d.coefficient(k) - want) / std::max(1.0, std::abs(want)));
                }
            }
        }
        identity = std::max(identity, qcalc::jd_operator_identity_residual(ModelId::VPJC, q, tests));
    }
    return {coeff_err <= 1e-14 && identity <= 1e-14,
            fmt::format("coefficient error {:.3g}, identity residual {:.3g}", coeff_err, identity)};
}

Verdict norm_audit() {
    const auto bad = fock::build_single_mode(ModelId::VPJC, Deformation(2.0), 40).norm_violations;
    bool exact = bad.size() == 19;
    for (std::size_t k = 0; exact && k < bad.size(); ++k) exact = bad[k].level == 2 * static_cast<int>(k + 1);
    bool clean = true;
    for (double qv : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        clean = clean && fock::build_single_mode(ModelId::VPJC, Deformation(qv), 40).norm_violations.empty();
    }
    return {exact && clean, fmt::format("q=2 flags {} levels (even 2..38: {}); 0<q<1 clean: {}", bad.size(), exact, clean)};
}

Verdict trace_identity() {
    double truncated = 0.0, exact = 0.0;
    for (double qv : {0.3, 0.5, 0.9}) {
        for (double eta : {1.0, 2.0, 4.0}) {
            for (ModelId m : {ModelId::VPJC, ModelId::PVC}) {
                truncated = std::max(truncated, thermo::exact_trace_occupation(m, Deformation(qv), eta, 60).identity_residual);
            }
            exact = std::max(exact, thermo::exact_trace_occupation(ModelId::CKN, Deformation(qv), eta, 0).identity_residual);
            for (int d = 1; d <= 4; ++d) {
                exact = std::max(exact, thermo::exact_trace_occupation(ModelId::FN, Deformation(qv), eta, d).identity_residual);
            }
        }
    }
    return {truncated <= 1e-6 && exact <= 1e-13, fmt::format("truncated {:.3g}, exact {:.3g}", truncated, exact)};
}

Verdict chemical_potential() {
    double rel = 0.0;
    for (double qv : {0.5, 1.0, 2.0}) {
        const double closed = thermo::fn_mu_lowT(0.05, Deformation(qv));
        rel = std::max(rel, std::abs(thermo::fn_mu_numeric(0.05, Deformation(qv)) - closed) / std::abs(closed));
    }
    const double shift = thermo::fn_mu_numeric(0.05, Deformation(1.0)) - thermo::fn_mu_numeric(0.05, Deformation(2.0));
    const double shift_err = std::abs(shift - 0.05 * std::log(2.0));
    return {rel <= 1e-3 && shift_err <= 1e-4, fmt::format("relative {:.3g}, q-shift error {:.3g}", rel, shift_err)};
}

Verdict monotonicity() {
    bool distributions = true;
    for (double eta : {0.5, 1.0, 2.0}) {
        double ckn = -1.0, fn = HUGE_VAL, vpjc = HUGE_VAL;
        for (double qv : {0.9, 0.5, 0.3}) {
            const Deformation q(qv);
            distributions = distributions && thermo::ckn_distribution(eta, q) > ckn && thermo::fn_distribution(eta, q) < fn &&
                            thermo::vpjc_distribution(eta, q) < vpjc;
            ckn = thermo::ckn_distribution(eta, q);
            fn = thermo::fn_distribution(eta, q);
            vpjc = thermo::vpjc_distribution(eta, q);
        }
    }
    bool orderings = true;
    for (double z : {0.2, 0.5, 0.8}) {
        const auto deformed = thermo::fn_eos(Deformation(0.5), z);
        const auto plain = thermo::fn_eos(Deformation(1.0), z);
        orderings = orderings && deformed.entropy < plain.entropy && deformed.pressure < plain.pressure;
    }
    return {distributions && orderings, fmt::format("distributions ordered: {}; FN q=0.5 below q=1: {}", distributions, orderings)};
}

Verdict occupation_ratio() {
    double worst = 0.0;
    for (double qv : {0.3, 0.5, 0.9}) {
        for (double eta : {0.5, 1.0, 2.0, 4.0}) {
            const Deformation q(qv);
            worst = std::max(worst, std::abs(thermo::occupation_ratio_solve(ModelId::VPJC, eta, q) - thermo::vpjc_distribution(eta, q)));
            worst = std::max(worst, std::abs(thermo::occupation_ratio_solve(ModelId::PVC, eta, q) - thermo::pvc_distribution(eta, q)));
        }
    }
    return {worst <= 1e-10, fmt::format("max deviation {:.3g}", worst)};
}

Verdict determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "qfermi_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::string> contents;
    for (const char* name : {"a.csv", "b.csv"}) {
        const std::string path = (dir / name).string();
        const char* argv[] = {"qfermi", "figure", "fig2", "--out", path.c_str()};
        std::ostringstream out, err;
        if (cli::run(5, argv, out, err) != 0) return {false, "figure fig2 failed: " + err.str()};
        std::ifstream in(path, std::ios::binary);
        contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const bool same = !contents[0].empty() && contents[0] == contents[1];
    return {same, fmt::format("{} bytes, identical: {}", contents[0].size(), same)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"vpjc_zero_crossing", zero_crossing},     {"undeformed_limits", undeformed_limits},
        {"virial_coefficients", virial},           {"algebra_residuals", algebra_residuals},
        {"spectrum_consistency", spectrum_consistency}, {"jackson_derivative", jackson_exactness},
        {"norm_audit", norm_audit},                {"trace_identity", trace_identity},
        {"chemical_potential", chemical_potential}, {"monotonicity_ordering", monotonicity},
        {"occupation_ratio", occupation_ratio},    {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::cout << fmt::format("[{:2}] {}: {} ({})\n", k + 1, criteria[k].first, v.pass ? "PASS" : "FAIL", v.detail);
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
