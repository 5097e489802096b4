#pragma once

// Distribution functions and ideal-gas thermodynamics of the deformed fermions.
//
// Units: k_B = 1, eta = beta (eps - mu), z = exp(beta mu). Pressures and
// densities are reported as P lambda^3 / kT and rho lambda^3; chemical
// potentials in units of the Fermi energy with t = T / T_F.
//
// The closed-form distributions are the models' definitions. The exact Fock
// space traces are independent oracles and are allowed to disagree with them
// (notably FN with a single mode, where the trace gives 1 / (e^eta + 1)).

#include <vector>

#include "qfermi/fdfuncs.hpp"
#include "qfermi/kernels.hpp"
#include "qfermi/model.hpp"

namespace qfermi::thermo {

/// Abscissae within this distance of a singular point are rejected.
constexpr double kSingularWindow = 1e-12;

double fn_distribution(double eta, Deformation q);    // q / (e^eta + q)
double ckn_distribution(double eta, Deformation q);   // fn_distribution(eta, 1/q)
double pvc_distribution(double eta, Deformation q);   // 0 < q < 1, eta != -ln q
double vpjc_distribution(double eta, Deformation q);  // 0 < q < 1, eta != 0
double q1_limit_distribution(double eta);             // 1 / (e^eta + 1)

/// Dispatch for FN, CKN, PVC and VPJC.
double distribution(ModelId model, double eta, Deformation q);

/// eta values where distribution(model, ., q) is singular or discontinuous.
std::vector<double> singular_points(ModelId model, Deformation q);

/// Solves [n] / [n+1] = e^(-eta) for continuous n >= 0 with q^n as the
/// continuous unknown. The parity of the basic number is kept as a branch
/// label: the even branch covers e^(-eta) below the n -> infinity limit
/// of the ratio, the odd branch (PVC only, 0 < eta < -ln q) covers the rest.
double occupation_ratio_solve(ModelId model, double eta, Deformation q);

struct TraceAverages {
    double deformed_occupation;  // <[N]> = <sum_i c_i^+ c_i>
    double occupation;           // <N>
    double shifted;              // <[N + 1]> = <sum_i c_i c_i^+>
    double identity_residual;    // |<[N+1]> - e^eta <[N]>|
    double top_state_weight;     // Gibbs weight of the highest basis state
};

/// Tr(e^(-eta N) X) / Z over an explicit Fock representation.
/// `size` is n_max for VPJC/PVC (basis |0>..|n_max>), the mode count d for
/// FN, and is ignored for CKN. Unbounded models require eta > 0.
TraceAverages exact_trace_occupation(ModelId model, Deformation q, double eta, int size,
                                     kernels::Exec exec = kernels::Exec::parallel);

struct EosPoint {
    double pressure;        // P lambda^3 / kT
    double density;         // lambda^3 / v
    double energy_density;  // U lambda^3 / (V kT)
    double entropy;         // FN/CKN: S / (N k).  PVC: g (5/2 h_5/2 - h_3/2).
};

/// Requires q z < 1.
EosPoint fn_eos(Deformation q, double z, double tol = 1e-13);
/// fn_eos at 1/q.
EosPoint ckn_eos(Deformation q, double z, double tol = 1e-13);
/// Requires 0 < q < 1 and z / q < 1. Entropy is g (5/2 h(5/2) - h(3/2)).
EosPoint pvc_eos(Deformation q, double z, double multiplicity = 1.0, double tol = 1e-13);

/// Pv/kT = sum_k a_k (lambda^3 / v)^(k-1); returns a_1 .. a_orders with a_1 = 1.
/// Computed by reverting the density series in z and composing into the
/// pressure series, so q enters the arithmetic and cancels. 2 <= orders <= 6.
constexpr int kMaxVirialOrder = 6;
std::vector<double> virial_fit(ModelId model, Deformation q, int orders);

/// mu / eps_F = -t ln q + 1 - (pi^2 / 12) t^2, valid for 0 < t <= 0.2.
double fn_mu_lowT(double t, Deformation q);

/// Solves (t L)^(3/2) [1 + (pi^2/8) L^-2 + (7 pi^4/640) L^-4] = 1 for L = ln(q z),
/// keeping `sommerfeld_terms` (1..3) bracket terms, and returns t ln z.
double fn_mu_numeric(double t, Deformation q, int sommerfeld_terms = 2);

double ckn_mu_lowT(double t, Deformation q);
double ckn_mu_numeric(double t, Deformation q, int sommerfeld_terms = 2);

/// Pressure and entropy of FN against PVC at equal (q, z).
struct FnPvcComparison {
    EosPoint fn;
    EosPoint pvc;
    bool fn_pressure_lower;
    bool fn_entropy_lower;
};
FnPvcComparison compare_fn_pvc(Deformation q, double z, double multiplicity = 1.0, double tol = 1e-13);

}  // namespace qfermi::thermo
