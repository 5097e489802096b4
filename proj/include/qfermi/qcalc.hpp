#pragma once

// Fermionic Jackson derivatives of the PVC and VPJC algebras.
//
//   PVC : D f(x) = (f(x/q) - f(-q x)) / (x (q + 1/q))
//   VPJC: D f(x) = (f(x) - f(-q x)) / (x (1 + q))
//
// Neither reduces to d/dx at q = 1. On polynomials D x^n = [n] x^(n-1), so the
// polynomial path is exact and has no x = 0 singularity.

#include <functional>
#include <initializer_list>
#include <vector>

#include "qfermi/model.hpp"

namespace qfermi::qcalc {

/// Real polynomial in the monomial basis, coefficients a_0 .. a_m.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);
    Polynomial(std::initializer_list<double> coefficients);

    static Polynomial monomial(int degree, double coefficient = 1.0);

    const std::vector<double>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double coefficient(int n) const;

    double operator()(double x) const;

    /// x * p(x)
    Polynomial times_x() const;
    /// p(s x), i.e. s^N acting termwise.
    Polynomial scaled_argument(double s) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, const Polynomial& p);

    /// max_n |a_n|
    double max_abs_coefficient() const;

  private:
    std::vector<double> coeffs_{0.0};
};

using RealFunction = std::function<double(double)>;

/// Throws SingularPoint at x = 0.
double pvc_jd_value(const RealFunction& f, double x, Deformation q);
double vpjc_jd_value(const RealFunction& f, double x, Deformation q);

/// Coefficient map sum a_n x^n -> sum a_n [n] x^(n-1). model is PVC or VPJC.
Polynomial jd_polynomial(ModelId model, const Polynomial& p, Deformation q);

/// Max coefficient of D(x p) + q x D(p) - p over the test set. VPJC only.
double jd_operator_identity_residual(ModelId model, Deformation q, const std::vector<Polynomial>& tests);

}  // namespace qfermi::qcalc
