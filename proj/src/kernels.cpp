#include "qfermi/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfermi::kernels {

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double compensated_sum(std::span<const double> terms) {
    double sum = 0.0;
    double carry = 0.0;
    for (double t : terms) {
        const double next = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            carry += (sum - next) + t;
        } else {
            carry += (t - next) + sum;
        }
        sum = next;
    }
    return sum + carry;
}

namespace {

void require_same_size(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("gibbs_average: levels and observable must be nonempty and equal length");
    }
}

GibbsAverage finish(const std::vector<double>& weights, const std::vector<double>& weighted) {
    const double z = compensated_sum(weights);
    return {z, compensated_sum(weighted) / z};
}

}  // namespace

GibbsAverage gibbs_average_serial(std::span<const double> levels, std::span<const double> observable,
                                  double eta) {
    require_same_size(levels, observable);
    std::vector<double> weights(levels.size());
    std::vector<double> weighted(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        weights[k] = std::exp(-eta * levels[k]);
        weighted[k] = weights[k] * observable[k];
    }
    return finish(weights, weighted);
}

GibbsAverage gibbs_average_parallel(std::span<const double> levels, std::span<const double> observable,
                                    double eta) {
    require_same_size(levels, observable);
    std::vector<double> weights(levels.size());
    std::vector<double> weighted(levels.size());
    const auto n = static_cast<long>(levels.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        weights[k] = std::exp(-eta * levels[k]);
        weighted[k] = weights[k] * observable[k];
    }
    return finish(weights, weighted);
}

GibbsAverage gibbs_average(std::span<const double> levels, std::span<const double> observable, double eta,
                           Exec exec) {
    return exec == Exec::serial ? gibbs_average_serial(levels, observable, eta)
                                : gibbs_average_parallel(levels, observable, eta);
}

double max_abs_serial(std::span<const double> values) {
    double worst = 0.0;
    for (double v : values) {
        const double a = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::abs(v);
        worst = std::max(worst, a);
    }
    return worst;
}

double max_abs_parallel(std::span<const double> values) {
    double worst = 0.0;
    const auto n = static_cast<long>(values.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (long k = 0; k < n; ++k) {
        const double v = values[k];
        const double a = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::abs(v);
        worst = std::max(worst, a);
    }
    return worst;
}

}  // namespace qfermi::kernels
