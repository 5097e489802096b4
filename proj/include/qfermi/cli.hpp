#pragma once

// qfermi <command> [--model fn|ckn|pvc|vpjc] [--q <list>] [--grid a:b:n]
//                  [--xi x] [--tol t] [--seed s] [--out path] [--group g]
//
// Exit codes: 0 success, 1 check failure, 2 usage or configuration error.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfermi/model.hpp"

namespace qfermi::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Grid {
    double start;
    double stop;
    int count;

    /// Evenly spaced, both ends included. Points within 1e-12 of an entry in
    /// `avoid` are moved 1e-9 to the right.
    std::vector<double> points(const std::vector<double>& avoid = {}) const;
};

constexpr double kGridNudge = 1e-9;

/// "start:stop:count"; count >= 2 and start < stop.
Grid parse_grid(const std::string& text);

/// Comma-separated reals; "a/b" fractions allowed.
std::vector<double> parse_q_list(const std::string& text);

struct RunConfig {
    std::string command;
    std::optional<ModelId> model;
    std::vector<double> q_list;
    std::optional<Grid> grid;
    double xi = 2.0;
    double tol = 1e-13;
    std::string output_path;  // empty: standard output
    unsigned long long seed = 20240917;
    std::optional<std::string> group;
    int orders = 3;
    int dim = 12;
    int sommerfeld_terms = 2;
    double multiplicity = 1.0;
    bool strict = false;
};

/// Rectangular numeric table; NaN cells are written empty.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Comma separated, "\n" line ends, 12 significant digits.
std::string to_csv(const Table& table);
std::string format_number(double value);

/// Writes to `path` through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& content);

/// Column label for a deformation value, e.g. "n_q0.5".
std::string q_label(const std::string& prefix, double q);

Table cmd_dist(const RunConfig& config);
Table cmd_figure(const RunConfig& config);  // config.group holds "fig1" or "fig2"
Table cmd_eos_table(const RunConfig& config, double q, std::ostream& err);
std::string cmd_virial(const RunConfig& config);
Table cmd_mu(const RunConfig& config);
Table cmd_spectrum(const RunConfig& config);

/// Full command line, including dispatch and output. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfermi::cli
