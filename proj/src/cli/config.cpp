#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "qfermi/cli.hpp"

namespace qfermi::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& raw) {
    const std::string text = trim(raw);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(fmt::format("'{}' is not a number", raw));
    }
    if (used != text.size() || !std::isfinite(value)) throw UsageError(fmt::format("'{}' is not a number", raw));
    return value;
}

}  // namespace

std::vector<double> Grid::points(const std::vector<double>& avoid) const {
    std::vector<double> xs(count);
    for (int k = 0; k < count; ++k) {
        double x = start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
        for (double s : avoid) {
            if (std::abs(x - s) <= 1e-12) x = s + kGridNudge;
        }
        xs[k] = x;
    }
    return xs;
}

Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError(fmt::format("grid '{}' must look like start:stop:count", text));
    Grid grid{parse_real(parts[0]), parse_real(parts[1]), 0};
    const std::string count = trim(parts[2]);
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), grid.count);
    if (ec != std::errc{} || ptr != count.data() + count.size()) {
        throw UsageError(fmt::format("grid count '{}' is not an integer", parts[2]));
    }
    if (grid.count < 2) throw UsageError("grid count must be >= 2");
    if (!(grid.start < grid.stop)) throw UsageError("grid start must be below stop");
    return grid;
}

std::vector<double> parse_q_list(const std::string& text) {
    std::vector<double> qs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        const auto slash = item.find('/');
        double q = 0.0;
        if (slash == std::string::npos) {
            q = parse_real(item);
        } else {
            const double den = parse_real(item.substr(slash + 1));
            if (den == 0.0) throw UsageError(fmt::format("'{}' divides by zero", item));
            q = parse_real(item.substr(0, slash)) / den;
        }
        if (!(q > 0.0)) throw UsageError(fmt::format("q = {} must be positive", trim(item)));
        qs.push_back(q);
    }
    if (qs.empty()) throw UsageError("empty q list");
    return qs;
}

std::string q_label(const std::string& prefix, double q) { return fmt::format("{}_q{:g}", prefix, q); }

}  // namespace qfermi::cli
