#include "qfermi/qnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace qfermi {

std::string_view to_string(ModelId model) {
    switch (model) {
        case ModelId::FN: return "fn";
        case ModelId::CKN: return "ckn";
        case ModelId::PVC: return "pvc";
        case ModelId::VPJC: return "vpjc";
        case ModelId::ArikCoonBoson: return "arikcoon";
    }
    return "?";
}

std::optional<ModelId> parse_model(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (ModelId m : {ModelId::FN, ModelId::CKN, ModelId::PVC, ModelId::VPJC, ModelId::ArikCoonBoson}) {
        if (lower == to_string(m)) return m;
    }
    if (lower == "arik-coon" || lower == "ac") return ModelId::ArikCoonBoson;
    return std::nullopt;
}

namespace qnum {

namespace {

void require_nonnegative(int n) {
    if (n < 0) throw InvalidArgument("spectrum index must be nonnegative");
}

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double fn_spectrum(int total_occupation, Deformation q) {
    require_nonnegative(total_occupation);
    if (total_occupation == 0) return 0.0;
    return total_occupation * std::pow(q.value(), total_occupation - 1);
}

double ckn_spectrum(int n, Deformation q) {
    require_nonnegative(n);
    if (n % 2 == 0) return 0.0;
    return std::pow(q.value(), 1 - n);
}

double pvc_basic(int n, Deformation q) {
    require_nonnegative(n);
    if (n == 0) return 0.0;
    const double qv = q.value();
    if (q.is_undeformed()) return (n % 2 == 0) ? 0.0 : 1.0;
    return (std::pow(qv, -n) - parity_sign(n) * std::pow(qv, n)) / (qv + 1.0 / qv);
}

double vpjc_basic(int n, Deformation q) {
    require_nonnegative(n);
    if (n == 0) return 0.0;
    if (q.is_undeformed()) return (n % 2 == 0) ? 0.0 : 1.0;
    const double qv = q.value();
    return (1.0 - parity_sign(n) * std::pow(qv, n)) / (1.0 + qv);
}

double arik_coon_basic(int n, Deformation q) {
    require_nonnegative(n);
    if (q.is_undeformed()) return n;
    const double qv = q.value();
    return (1.0 - std::pow(qv, n)) / (1.0 - qv);
}

double basic(ModelId model, int n, Deformation q) {
    switch (model) {
        case ModelId::FN: return fn_spectrum(n, q);
        case ModelId::CKN: return ckn_spectrum(n, q);
        case ModelId::PVC: return pvc_basic(n, q);
        case ModelId::VPJC: return vpjc_basic(n, q);
        case ModelId::ArikCoonBoson: return arik_coon_basic(n, q);
    }
    throw InvalidArgument("unknown model");
}

double vpjc_recurrence_check(int nmax, Deformation q) {
    if (nmax < 1) throw InvalidArgument("vpjc_recurrence_check: nmax must be >= 1");
    double worst = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        const double residual = vpjc_basic(n + 1, q) - (1.0 - q.value() * vpjc_basic(n, q));
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

double basic_factorial(ModelId model, int n, Deformation q) {
    require_nonnegative(n);
    if (model != ModelId::PVC && model != ModelId::VPJC && model != ModelId::ArikCoonBoson) {
        throw InvalidArgument("basic_factorial is defined for PVC, VPJC and Arik-Coon only");
    }
    double product = 1.0;
    for (int k = 1; k <= n; ++k) product *= basic(model, k, q);
    return product;
}

DeformedSpectrum make_spectrum(ModelId model, Deformation q, int nmax) {
    require_nonnegative(nmax);
    DeformedSpectrum spectrum{model, q, {}, {}};
    spectrum.values.reserve(nmax + 1);
    for (int n = 0; n <= nmax; ++n) spectrum.values.push_back(basic(model, n, q));
    if (model == ModelId::PVC || model == ModelId::VPJC || model == ModelId::ArikCoonBoson) {
        spectrum.factorials.reserve(nmax + 1);
        spectrum.factorials.push_back(1.0);
        for (int n = 1; n <= nmax; ++n) {
            spectrum.factorials.push_back(spectrum.factorials.back() * spectrum.values[n]);
        }
    }
    return spectrum;
}

}  // namespace qnum
}  // namespace qfermi
