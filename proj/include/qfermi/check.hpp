#pragma once

// Self-verification suite behind `qfermi check`: every module invariant as a
// named PASS/FAIL line. Randomized checks draw from `seed` only.

#include <optional>
#include <string>
#include <vector>

#include "qfermi/model.hpp"

namespace qfermi::check {

struct CheckResult {
    std::string group;
    std::string name;
    bool pass;
    std::string detail;
};

struct CheckOptions {
    std::optional<std::string> group;  // run only this group
    unsigned long long seed = 20240917;
    /// Extra representation audit of (model, q) pairs; with `strict`, any
    /// negative-norm level fails the run.
    std::optional<ModelId> model;
    std::vector<double> q_list;
    int dim = 12;
    bool strict = false;
};

const std::vector<std::string>& group_names();

/// Throws InvalidArgument for an unknown group name.
std::vector<CheckResult> run_checks(const CheckOptions& options);

/// "GROUP NAME: PASS (detail)"
std::string format_line(const CheckResult& result);

}  // namespace qfermi::check
