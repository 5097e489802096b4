#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin with identical
// arithmetic so tests can demand bit-equal results; reductions whose result
// depends on summation order are always finished serially.

#include <cmath>
#include <exception>
#include <limits>
#include <span>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qfermi::kernels {

enum class Exec { serial, parallel };

int max_threads();

/// f(x) for every x; a throwing f yields a quiet NaN in that slot.
template <class F>
std::vector<double> map_serial(std::span<const double> xs, F&& f) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (const std::exception&) {
            out[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

template <class F>
std::vector<double> map_parallel(std::span<const double> xs, F&& f) {
    std::vector<double> out(xs.size());
    const auto n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (const std::exception&) {
            out[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

template <class F>
std::vector<double> map(std::span<const double> xs, F&& f, Exec exec = Exec::parallel) {
    return exec == Exec::serial ? map_serial(xs, f) : map_parallel(xs, f);
}

/// Neumaier-compensated sum, always in index order.
double compensated_sum(std::span<const double> terms);

/// Sum_k w_k x_k / Sum_k w_k with w_k = exp(-eta * level_k).
struct GibbsAverage {
    double partition;  // Sum_k w_k
    double mean;
};

GibbsAverage gibbs_average_serial(std::span<const double> levels, std::span<const double> observable,
                                  double eta);
GibbsAverage gibbs_average_parallel(std::span<const double> levels, std::span<const double> observable,
                                    double eta);
GibbsAverage gibbs_average(std::span<const double> levels, std::span<const double> observable, double eta,
                           Exec exec = Exec::parallel);

/// max_k |values_k|; NaN propagates as +inf.
double max_abs_serial(std::span<const double> values);
double max_abs_parallel(std::span<const double> values);

}  // namespace qfermi::kernels
