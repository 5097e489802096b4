#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "qfermi/qnum.hpp"
#include "qfermi/thermo.hpp"

using namespace qfermi;
using oracle::Real;

TEST_CASE("distributions against 50-digit evaluations") {
    for (double qv : {0.3, 0.5, 0.9}) {
        const Deformation q(qv);
        for (int k = 0; k <= 80; ++k) {
            const double eta = -6.0 + 0.15 * k + 1e-3;
            const Real e(eta), qr(qv);
            CHECK(thermo::fn_distribution(eta, q) ==
                  doctest::Approx(oracle::to_double(qr / (boost::multiprecision::exp(e) + qr))).epsilon(1e-14));
            CHECK(thermo::ckn_distribution(eta, q) ==
                  doctest::Approx(oracle::to_double(1 / (qr * boost::multiprecision::exp(e) + 1))).epsilon(1e-14));
            const double vpjc = oracle::to_double(oracle::vpjc_distribution(e, qr));
            CHECK(std::abs(thermo::vpjc_distribution(eta, q) - vpjc) <= 1e-12 * std::max(1.0, vpjc));
            const double pvc = oracle::to_double(oracle::pvc_distribution(e, qr));
            CHECK(std::abs(thermo::pvc_distribution(eta, q) - pvc) <= 1e-12 * std::max(1.0, pvc));
        }
    }
}

TEST_CASE("undeformed limits agree with Fermi-Dirac") {
    for (int k = 0; k <= 200; ++k) {
        const double eta = -10.0 + 0.1 * k;
        const double fd = oracle::to_double(oracle::fermi_dirac(Real(eta)));
        CHECK(std::abs(thermo::fn_distribution(eta, Deformation(1.0)) - fd) <= 1e-14);
        CHECK(std::abs(thermo::ckn_distribution(eta, Deformation(1.0)) - fd) <= 1e-14);
        CHECK(std::abs(thermo::q1_limit_distribution(eta) - fd) <= 1e-14);
    }
}

TEST_CASE("VPJC zero crossing at ln((1-q)/2)") {
    for (double qv : {1.0 / 3.0, 0.5, 0.8}) {
        const double root = std::log((1.0 - qv) / 2.0);
        CHECK(thermo::vpjc_distribution(root, Deformation(qv)) <= 1e-12);
        CHECK(thermo::vpjc_distribution(root - 0.05, Deformation(qv)) > 1e-3);
        CHECK(thermo::vpjc_distribution(root + 0.05, Deformation(qv)) > 1e-3);
    }
}

TEST_CASE("singular points and invalid q") {
    CHECK_THROWS_AS(thermo::vpjc_distribution(0.0, Deformation(0.5)), SingularPoint);
    CHECK_THROWS_AS(thermo::pvc_distribution(std::log(2.0), Deformation(0.5)), SingularPoint);
    CHECK_THROWS_AS(thermo::vpjc_distribution(1.0, Deformation(1.0)), InvalidDeformation);
    CHECK_THROWS_AS(thermo::pvc_distribution(1.0, Deformation(2.0)), InvalidDeformation);
    const auto points = thermo::singular_points(ModelId::PVC, Deformation(0.5));
    REQUIRE(points.size() == 1);
    CHECK(points[0] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("property: monotonicity in q") {
    for (double eta : {0.5, 1.0, 2.0}) {
        double ckn = -1.0, fn = HUGE_VAL, vpjc = HUGE_VAL;
        for (double qv : {0.9, 0.5, 0.3}) {
            const Deformation q(qv);
            CHECK(thermo::ckn_distribution(eta, q) > ckn);
            CHECK(thermo::fn_distribution(eta, q) < fn);
            CHECK(thermo::vpjc_distribution(eta, q) < vpjc);
            ckn = thermo::ckn_distribution(eta, q);
            fn = thermo::fn_distribution(eta, q);
            vpjc = thermo::vpjc_distribution(eta, q);
        }
    }
}

TEST_CASE("occupation-ratio bisection reproduces the closed forms") {
    for (double qv : {0.3, 0.5, 0.9}) {
        const Deformation q(qv);
        for (double eta : {0.5, 1.0, 2.0, 4.0}) {
            CHECK(std::abs(thermo::occupation_ratio_solve(ModelId::VPJC, eta, q) - thermo::vpjc_distribution(eta, q)) <= 1e-10);
            if (std::abs(eta + std::log(qv)) > 1e-9) {
                CHECK(std::abs(thermo::occupation_ratio_solve(ModelId::PVC, eta, q) - thermo::pvc_distribution(eta, q)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("truncated traces against spectrum-only oracle") {
    for (double qv : {0.3, 0.5, 0.9}) {
        const Deformation q(qv);
        for (double eta : {1.0, 2.0, 4.0}) {
            for (ModelId m : {ModelId::VPJC, ModelId::PVC}) {
                const auto got = thermo::exact_trace_occupation(m, q, eta, 60);
                const auto want = oracle::truncated_traces(
                    [&](int n) { return Real(qnum::basic(m, n, q)); }, 60, Real(eta));
                CHECK(got.deformed_occupation == doctest::Approx(oracle::to_double(want.deformed)).epsilon(1e-12));
                CHECK(got.shifted == doctest::Approx(oracle::to_double(want.shifted)).epsilon(1e-12));
                CHECK(got.identity_residual <= 1e-6);
            }
        }
    }
}

TEST_CASE("exact CKN and FN traces satisfy the identity to rounding") {
    for (double qv : {0.3, 0.5, 0.9, 1.0, 1.5}) {
        for (double eta : {-1.0, 0.5, 2.0}) {
            CHECK(thermo::exact_trace_occupation(ModelId::CKN, Deformation(qv), eta, 0).identity_residual <= 1e-13);
            for (int d = 1; d <= 4; ++d) {
                CHECK(thermo::exact_trace_occupation(ModelId::FN, Deformation(qv), eta, d).identity_residual <= 1e-13);
            }
        }
    }
}

TEST_CASE("serial and parallel traces are identical") {
    const auto a = thermo::exact_trace_occupation(ModelId::PVC, Deformation(0.5), 2.0, 60, kernels::Exec::serial);
    const auto b = thermo::exact_trace_occupation(ModelId::PVC, Deformation(0.5), 2.0, 60, kernels::Exec::parallel);
    CHECK(a.deformed_occupation == b.deformed_occupation);
    CHECK(a.shifted == b.shifted);
}

TEST_CASE("virial coefficients match the series-inversion oracle") {
    for (ModelId m : {ModelId::FN, ModelId::CKN}) {
        for (double qv : {0.3, 0.5, 0.9, 1.5}) {
            const auto a = thermo::virial_fit(m, Deformation(qv), 6);
            const auto want = oracle::virial_coefficients(Real(1), 6);
            REQUIRE(a.size() == 6);
            for (int k = 0; k < 6; ++k) CHECK(std::abs(a[k] - oracle::to_double(want[k])) <= 1e-12);
        }
    }
    const auto a = thermo::virial_fit(ModelId::FN, Deformation(0.5), 3);
    CHECK(std::abs(a[1] - std::pow(2.0, -2.5)) <= 1e-10);
    CHECK(std::abs(a[2] - (0.125 - 2.0 * std::pow(3.0, -2.5))) <= 1e-9);
    CHECK_THROWS_AS(thermo::virial_fit(ModelId::FN, Deformation(0.5), 7), InvalidArgument);
    CHECK_THROWS_AS(thermo::virial_fit(ModelId::FN, Deformation(0.5), 1), InvalidArgument);
    CHECK_THROWS_AS(thermo::virial_fit(ModelId::PVC, Deformation(0.5), 3), InvalidArgument);
}

TEST_CASE("equation of state: reduced quantities and orderings") {
    for (double z : {0.2, 0.5, 0.8}) {
        const auto deformed = thermo::fn_eos(Deformation(0.5), z);
        const auto plain = thermo::fn_eos(Deformation(1.0), z);
        CHECK(deformed.pressure < plain.pressure);
        CHECK(deformed.entropy < plain.entropy);
        CHECK(deformed.energy_density == doctest::Approx(1.5 * deformed.pressure).epsilon(1e-15));
        const double p = oracle::to_double(oracle::alternating_polylog(2.5, Real(0.5) * Real(z)));
        const double n = oracle::to_double(oracle::alternating_polylog(1.5, Real(0.5) * Real(z)));
        CHECK(deformed.pressure == doctest::Approx(p).epsilon(1e-13));
        CHECK(deformed.density == doctest::Approx(n).epsilon(1e-13));
        CHECK(deformed.entropy == doctest::Approx(2.5 * p / n - std::log(z)).epsilon(1e-12));
    }
    // Classical limit: pressure / density -> 1.
    const auto dilute = thermo::fn_eos(Deformation(1.0), 1e-6);
    CHECK(dilute.pressure / dilute.density == doctest::Approx(1.0).epsilon(1e-6));
    // CKN is FN at 1/q.
    const auto ckn = thermo::ckn_eos(Deformation(2.0), 0.3);
    const auto fn = thermo::fn_eos(Deformation(0.5), 0.3);
    CHECK(ckn.pressure == fn.pressure);
    CHECK_THROWS_AS(thermo::fn_eos(Deformation(2.0), 0.8), ConvergenceError);
}

TEST_CASE("PVC equation of state follows the h-series forms") {
    const Deformation q(0.5);
    for (double z : {0.05, 0.2, 0.4}) {
        const auto point = thermo::pvc_eos(q, z, 2.0);
        const double h52 = oracle::to_double(oracle::h_series(2.5, Real(z), Real("0.5")));
        const double h32 = oracle::to_double(oracle::h_series(1.5, Real(z), Real("0.5")));
        CHECK(point.pressure == doctest::Approx(h52).epsilon(1e-12));
        CHECK(point.density == doctest::Approx(h32).epsilon(1e-12));
        CHECK(point.entropy == doctest::Approx(2.0 * (2.5 * h52 - h32)).epsilon(1e-11));
    }
    // Leading terms of h(3/2) and h(5/2) coincide as z -> 0.
    const auto tiny = thermo::pvc_eos(q, 1e-7);
    CHECK(tiny.density / tiny.pressure == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("FN versus PVC at equal fugacity") {
    const auto cmp = thermo::compare_fn_pvc(Deformation(0.5), 0.3);
    CHECK(cmp.fn_pressure_lower);
    // The entropy comparison is between S/Nk (FN) and the PVC entropy density; the
    // direction is reported rather than asserted.
    CHECK(cmp.fn_entropy_lower == (cmp.fn.entropy < cmp.pvc.entropy));
}

TEST_CASE("chemical potential") {
    for (double qv : {0.5, 1.0, 2.0}) {
        const Deformation q(qv);
        const double closed = thermo::fn_mu_lowT(0.05, q);
        CHECK(closed == doctest::Approx(1.0 - std::numbers::pi * std::numbers::pi / 12 * 0.0025 - 0.05 * std::log(qv)));
        const double numeric = thermo::fn_mu_numeric(0.05, q);
        CHECK(std::abs(numeric - closed) / std::abs(closed) <= 1e-3);
        for (int terms = 1; terms <= 3; ++terms) {
            const double want = oracle::to_double(oracle::sommerfeld_mu(Real("0.05"), Real(qv), terms));
            CHECK(thermo::fn_mu_numeric(0.05, q, terms) == doctest::Approx(want).epsilon(1e-12));
        }
        CHECK(thermo::ckn_mu_numeric(0.05, q) == doctest::Approx(thermo::fn_mu_numeric(0.05, q.inverse())).epsilon(1e-15));
    }
    const double shift = thermo::fn_mu_numeric(0.05, Deformation(1.0)) - thermo::fn_mu_numeric(0.05, Deformation(2.0));
    CHECK(std::abs(shift - 0.05 * std::log(2.0)) <= 1e-4);
    CHECK_THROWS_AS(thermo::fn_mu_numeric(0.5, Deformation(1.0)), InvalidArgument);
}
