#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "qfermi/errors.hpp"

namespace qfermi {

enum class ModelId {
    FN,             // fermionic Newton, multimode, spectrum indexed by total N
    CKN,            // Chaichian-Kulish-Ng, two-state single mode
    PVC,            // Parthasarathy-Viswanathan-Chaichian
    VPJC,           // Viswanathan-Parthasarathy-Jagannathan-Chaichian
    ArikCoonBoson,  // bosonic contrast model, spectrum only
};

std::string_view to_string(ModelId model);

/// Accepts "fn", "ckn", "pvc", "vpjc", "arikcoon" (case-insensitive).
std::optional<ModelId> parse_model(std::string_view name);

/// Positive, finite deformation parameter q.
class Deformation {
  public:
    explicit Deformation(double q) : q_(q) {
        if (!(q > 0.0) || !std::isfinite(q)) {
            throw InvalidArgument("deformation parameter q must be positive and finite");
        }
    }

    double value() const { return q_; }
    bool is_undeformed() const { return q_ == 1.0; }
    Deformation inverse() const { return Deformation(1.0 / q_); }

    friend bool operator==(Deformation, Deformation) = default;

  private:
    double q_;
};

}  // namespace qfermi
