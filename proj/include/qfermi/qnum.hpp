#pragma once

// Deformed number spectra ("basic numbers") and their factorials.
//
// Every spectrum starts at g_0 = 0. Closed forms are used throughout; the
// VPJC recurrence g_{n+1} = 1 - q g_n is kept only as a consistency check.

#include <vector>

#include "qfermi/model.hpp"

namespace qfermi::qnum {

/// Eigenvalue of sum_i c_i^+ c_i on a multimode state of total occupation N: N q^(N-1).
double fn_spectrum(int total_occupation, Deformation q);

/// CKN: 0 for even n, q^(1-n) for odd n.
double ckn_spectrum(int n, Deformation q);

/// PVC: (q^-n - (-1)^n q^n) / (q + 1/q).
double pvc_basic(int n, Deformation q);

/// VPJC: (1 - (-q)^n) / (1 + q).
double vpjc_basic(int n, Deformation q);

/// Arik-Coon boson: (1 - q^n) / (1 - q), n at q = 1.
double arik_coon_basic(int n, Deformation q);

/// Dispatch on model. For FN the index is the total occupation.
double basic(ModelId model, int n, Deformation q);

/// max_{0 <= n <= nmax} |g_{n+1} - (1 - q g_n)| for the VPJC closed form.
double vpjc_recurrence_check(int nmax, Deformation q);

/// [n]! = [n][n-1]...[1]; defined for PVC, VPJC and the Arik-Coon boson.
double basic_factorial(ModelId model, int n, Deformation q);

struct DeformedSpectrum {
    ModelId model;
    Deformation q;
    std::vector<double> values;      // g_0 .. g_nmax
    std::vector<double> factorials;  // [0]! .. [nmax]!, empty for FN/CKN
};

DeformedSpectrum make_spectrum(ModelId model, Deformation q, int nmax);

}  // namespace qfermi::qnum
