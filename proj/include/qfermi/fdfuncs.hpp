#pragma once

// Generalized Fermi-Dirac series with certified truncation bounds.
//
//   f_n(q, z)   = sum_{l>=1} (-1)^(l-1) (q z)^l / l^n
//   h(n, z, q)  = (1 / (2 ln q)) * ( sum_k (-1)^(k+1) (q z)^k / k^(n+1)
//                                   - sum_k (z / q)^k / k^(n+1) )
//
// h is implemented exactly as written, including the k^(n+1) exponent and the
// non-alternating second sum; it therefore has no finite q -> 1 limit.

#include "qfermi/model.hpp"

namespace qfermi::fdfuncs {

enum class SeriesMethod {
    direct,       // partial sums, first-omitted-term / geometric tail bound
    accelerated,  // Cohen-Villegas-Zagier weights, 2 a_1 / (3 + sqrt 8)^n bound
};

struct SeriesValue {
    double value = 0.0;
    double error_bound = 0.0;  // truncation bound plus a rounding allowance
    int terms_used = 1;
    SeriesMethod method = SeriesMethod::direct;
};

/// Direct summation is used while it converges within this many terms.
constexpr int kDirectTermCap = 4096;

/// f_n(q, z). Requires q z <= 1; throws ConvergenceError beyond.
SeriesValue f_gen(double order, Deformation q, double z, double tol);

/// f_n(1, z).
SeriesValue standard_fd(double order, double z, double tol);

/// h(n, z, q) for 0 < q < 1 and z / q < 1.
SeriesValue h_gen(double order, double z, Deformation q, double tol);

/// sum_{l=1}^{terms} (-1)^(l-1) w^l / l^order, compensated, in index order.
double alternating_partial_sum(double order, double w, int terms);

/// CVZ-accelerated value of the same alternating series using `terms` weights.
double alternating_accelerated_sum(double order, double w, int terms);

/// sum_{k=1}^{terms} r^k / k^order.
double positive_partial_sum(double order, double r, int terms);

}  // namespace qfermi::fdfuncs
