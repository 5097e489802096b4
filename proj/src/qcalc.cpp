#include "qfermi/qcalc.hpp"

#include <algorithm>
#include <cmath>

#include "qfermi/qnum.hpp"

namespace qfermi::qcalc {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial::Polynomial(std::initializer_list<double> coefficients)
    : Polynomial(std::vector<double>(coefficients)) {}

Polynomial Polynomial::monomial(int degree, double coefficient) {
    if (degree < 0) throw InvalidArgument("monomial degree must be nonnegative");
    std::vector<double> c(degree + 1, 0.0);
    c[degree] = coefficient;
    return Polynomial(std::move(c));
}

double Polynomial::coefficient(int n) const {
    return (n >= 0 && n < static_cast<int>(coeffs_.size())) ? coeffs_[n] : 0.0;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::times_x() const {
    std::vector<double> c(coeffs_.size() + 1, 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled_argument(double s) const {
    std::vector<double> c(coeffs_);
    double power = 1.0;
    for (double& a : c) {
        a *= power;
        power *= s;
    }
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = a.coefficient(static_cast<int>(n)) + b.coefficient(static_cast<int>(n));
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> c(p.coeffs_);
    for (double& a : c) a *= s;
    return Polynomial(std::move(c));
}

double Polynomial::max_abs_coefficient() const {
    double worst = 0.0;
    for (double a : coeffs_) worst = std::max(worst, std::abs(a));
    return worst;
}

namespace {

void require_nonzero(double x) {
    if (x == 0.0) throw SingularPoint("Jackson derivative of a general function is singular at x = 0");
}

}  // namespace

double pvc_jd_value(const RealFunction& f, double x, Deformation q) {
    require_nonzero(x);
    const double qv = q.value();
    return (f(x / qv) - f(-qv * x)) / (x * (qv + 1.0 / qv));
}

double vpjc_jd_value(const RealFunction& f, double x, Deformation q) {
    require_nonzero(x);
    const double qv = q.value();
    return (f(x) - f(-qv * x)) / (x * (1.0 + qv));
}

Polynomial jd_polynomial(ModelId model, const Polynomial& p, Deformation q) {
    if (model != ModelId::PVC && model != ModelId::VPJC) {
        throw InvalidArgument("jd_polynomial: model must be PVC or VPJC");
    }
    if (p.degree() == 0) return Polynomial{0.0};
    std::vector<double> c(p.degree(), 0.0);
    for (int n = 1; n <= p.degree(); ++n) c[n - 1] = p.coefficient(n) * qnum::basic(model, n, q);
    return Polynomial(std::move(c));
}

double jd_operator_identity_residual(ModelId model, Deformation q, const std::vector<Polynomial>& tests) {
    if (tests.empty()) throw InvalidArgument("jd_operator_identity_residual: empty test set");
    if (model != ModelId::VPJC) {
        throw InvalidArgument("jd_operator_identity_residual: only the VPJC identity D x + q x D = 1 is defined");
    }
    double worst = 0.0;
    for (const Polynomial& p : tests) {
        const Polynomial lhs = jd_polynomial(model, p.times_x(), q) + q.value() * jd_polynomial(model, p, q).times_x();
        worst = std::max(worst, (lhs - p).max_abs_coefficient());
    }
    return worst;
}

}  // namespace qfermi::qcalc
