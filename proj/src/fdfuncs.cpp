#include "qfermi/fdfuncs.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "qfermi/kernels.hpp"

namespace qfermi::fdfuncs {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
constexpr int kPositiveTermCap = 1'000'000;

double term(double order, double w, int l) { return std::pow(w, l) / std::pow(static_cast<double>(l), order); }

void validate(double order, double z, double tol) {
    if (!(order >= 0.5)) throw InvalidArgument("series order must be >= 1/2");
    if (!(z >= 0.0) || !std::isfinite(z)) throw InvalidArgument("fugacity must be finite and nonnegative");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

// Sum of (-1)^(l-1) w^l / l^order for 0 <= w <= 1 with a budget for truncation.
SeriesValue alternating(double order, double w, double budget) {
    if (w == 0.0) return {0.0, 0.0, 1, SeriesMethod::direct};
    std::vector<double> terms;
    double abs_sum = 0.0;
    for (int l = 1; l <= kDirectTermCap; ++l) {
        const double t = term(order, w, l);
        terms.push_back((l % 2 == 1) ? t : -t);
        abs_sum += t;
        const double next = term(order, w, l + 1);
        if (next <= budget) {
            return {kernels::compensated_sum(terms), next + 8.0 * kUnitRoundoff * abs_sum, l, SeriesMethod::direct};
        }
    }
    // Slowly convergent (w close to 1): the terms are moments of a positive
    // measure on [0, 1], so the CVZ bound |S - S_n| <= 2 a_1 / (3 + sqrt 8)^n holds.
    const double first = term(order, w, 1);
    const double rate = 3.0 + std::sqrt(8.0);
    const int n = std::max(1, static_cast<int>(std::ceil(std::log(2.0 * first / budget) / std::log(rate))));
    const double bound = 2.0 * first / std::pow(rate, n);
    return {alternating_accelerated_sum(order, w, n), bound + 8.0 * kUnitRoundoff * n * first, n,
            SeriesMethod::accelerated};
}

}  // namespace

double alternating_partial_sum(double order, double w, int terms) {
    std::vector<double> t(terms);
    for (int l = 1; l <= terms; ++l) t[l - 1] = (l % 2 == 1) ? term(order, w, l) : -term(order, w, l);
    return kernels::compensated_sum(t);
}

double alternating_accelerated_sum(double order, double w, int terms) {
    // Cohen, Villegas, Zagier, "Convergence acceleration of alternating series", Algorithm 1.
    const int n = terms;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0;
    double c = -d;
    std::vector<double> weighted(n);
    for (int k = 0; k < n; ++k) {
        c = b - c;
        weighted[k] = c * term(order, w, k + 1);
        b = (static_cast<double>(k + n) * (k - n) * b) / ((k + 0.5) * (k + 1.0));
    }
    return kernels::compensated_sum(weighted) / d;
}

double positive_partial_sum(double order, double r, int terms) {
    std::vector<double> t(terms);
    for (int k = 1; k <= terms; ++k) t[k - 1] = term(order, r, k);
    return kernels::compensated_sum(t);
}

SeriesValue f_gen(double order, Deformation q, double z, double tol) {
    validate(order, z, tol);
    const double w = q.value() * z;
    if (w > 1.0) {
        throw ConvergenceError(fmt::format("f_{}(q, z) diverges for q z = {} > 1", order, w));
    }
    SeriesValue result = alternating(order, w, tol / 2.0);
    if (result.error_bound > tol) throw ConvergenceError("requested tolerance is below attainable precision");
    return result;
}

SeriesValue standard_fd(double order, double z, double tol) { return f_gen(order, Deformation(1.0), z, tol); }

SeriesValue h_gen(double order, double z, Deformation q, double tol) {
    validate(order, z, tol);
    if (q.is_undeformed()) throw InvalidDeformation("h(n, z, q) is undefined at q = 1");
    if (q.value() > 1.0) throw InvalidDeformation("h(n, z, q) is defined for 0 < q < 1");
    const double qv = q.value();
    const double r = z / qv;
    if (r >= 1.0) {
        throw ConvergenceError(fmt::format("h(n, z, q) diverges for z / q = {} >= 1", r));
    }
    const double exponent = order + 1.0;
    const double scale = 2.0 * std::log(qv);
    const double budget = tol * std::abs(scale) / 2.0;

    const SeriesValue first = alternating(exponent, qv * z, budget / 2.0);

    SeriesValue second{0.0, 0.0, 1, SeriesMethod::direct};
    if (r > 0.0) {
        std::vector<double> terms;
        double tail = 0.0;
        int k = 1;
        for (;; ++k) {
            if (k > kPositiveTermCap) throw ConvergenceError("h(n, z, q): second sum too slow; z / q too close to 1");
            terms.push_back(term(exponent, r, k));
            tail = term(exponent, r, k + 1) / (1.0 - r);
            if (tail <= budget / 2.0) break;
        }
        const double sum = kernels::compensated_sum(terms);
        second = {sum, tail + 8.0 * kUnitRoundoff * sum, k, SeriesMethod::direct};
    }

    SeriesValue result;
    result.value = (first.value - second.value) / scale;
    result.error_bound = (first.error_bound + second.error_bound) / std::abs(scale) +
                         4.0 * kUnitRoundoff * std::abs(result.value);
    result.terms_used = std::max(first.terms_used, second.terms_used);
    result.method = first.method;
    if (result.error_bound > tol) throw ConvergenceError("requested tolerance is below attainable precision");
    return result;
}

}  // namespace qfermi::fdfuncs
