#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "qfermi/cli.hpp"

namespace qfermi::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "";
    if (value == 0.0) return "0";  // no "-0"
    return fmt::format("{:.12g}", value);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        if (k) out += ',';
        out += table.header[k];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += format_number(row[k]);
        }
        out += '\n';
    }
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::random_device rd;
    fs::path temp = target;
    temp += fmt::format(".tmp{:08x}", rd());
    {
        std::ofstream file(temp, std::ios::binary | std::ios::trunc);
        if (!file) throw UsageError(fmt::format("cannot open '{}' for writing", temp.string()));
        file << content;
        file.flush();
        if (!file) {
            file.close();
            fs::remove(temp);
            throw UsageError(fmt::format("failed writing '{}'", temp.string()));
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw UsageError(fmt::format("cannot move output into '{}': {}", path, ec.message()));
    }
}

}  // namespace qfermi::cli
