#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qfermi/check.hpp"
#include "qfermi/cli.hpp"
#include "qfermi/kernels.hpp"
#include "qfermi/qnum.hpp"
#include "qfermi/thermo.hpp"

namespace qfermi::cli {

namespace {

ModelId model_or(const RunConfig& config, ModelId fallback) { return config.model.value_or(fallback); }

std::vector<double> q_list_or(const RunConfig& config, std::vector<double> fallback) {
    return config.q_list.empty() ? fallback : config.q_list;
}

void append_column(Table& table, std::string name, const std::vector<double>& values) {
    table.header.push_back(std::move(name));
    for (std::size_t k = 0; k < values.size(); ++k) table.rows[k].push_back(values[k]);
}

Table first_column(const std::string& name, const std::vector<double>& xs) {
    Table table;
    table.header.push_back(name);
    for (double x : xs) table.rows.push_back({x});
    return table;
}

// Distribution columns over an eta grid, one per q; singular cells stay NaN.
Table distribution_table(ModelId model, const std::vector<double>& qs, const std::string& axis,
                         const std::vector<double>& abscissae, double eta_shift) {
    if (model != ModelId::FN && model != ModelId::CKN && model != ModelId::PVC && model != ModelId::VPJC) {
        throw UsageError("dist: model must be fn, ckn, pvc or vpjc");
    }
    const bool unit_interval = model == ModelId::PVC || model == ModelId::VPJC;
    Table table = first_column(axis, abscissae);
    for (double qv : qs) {
        const Deformation q(qv);
        if (unit_interval && qv > 1.0) {
            throw UsageError(fmt::format("{} distribution is defined for 0 < q <= 1 (got {})", to_string(model), qv));
        }
        std::vector<double> column;
        if (unit_interval && q.is_undeformed()) {
            column = kernels::map(abscissae, [&](double x) { return thermo::q1_limit_distribution(x - eta_shift); });
            append_column(table, "n_q1_limit", column);
        } else {
            column = kernels::map(abscissae, [&](double x) { return thermo::distribution(model, x - eta_shift, q); });
            append_column(table, q_label("n", qv), column);
        }
    }
    return table;
}

std::vector<double> all_singular_points(ModelId model, const std::vector<double>& qs, double shift) {
    std::vector<double> points;
    for (double qv : qs) {
        if (qv > 1.0 && (model == ModelId::PVC || model == ModelId::VPJC)) continue;
        for (double s : thermo::singular_points(model, Deformation(qv))) points.push_back(s + shift);
    }
    return points;
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
    if (config.output_path.empty()) {
        out << content;
    } else {
        write_atomic(config.output_path, content);
    }
}

std::string per_q_path(const std::string& path, double q) {
    const std::filesystem::path p(path);
    std::filesystem::path result = p.parent_path() / fmt::format("{}_q{:g}{}", p.stem().string(), q, p.extension().string());
    return result.string();
}

}  // namespace

Table cmd_dist(const RunConfig& config) {
    const ModelId model = model_or(config, ModelId::FN);
    const auto qs = q_list_or(config, {1.0});
    const Grid grid = config.grid.value_or(Grid{-5.0, 5.0, 201});
    return distribution_table(model, qs, "eta", grid.points(all_singular_points(model, qs, 0.0)), 0.0);
}

Table cmd_figure(const RunConfig& config) {
    const std::string name = config.group.value_or("");
    if (name == "fig1") {
        const std::vector<double> qs{0.5, 0.7, 0.9, 1.0};
        const Grid grid{0.0, 8.0, 161};
        return distribution_table(ModelId::CKN, qs, "x", grid.points(), config.xi);
    }
    if (name == "fig2") {
        const std::vector<double> qs{1.0 / 3.0, 0.5, 1.0};
        const Grid grid{-3.0, 5.0, 801};
        return distribution_table(ModelId::VPJC, qs, "eta", grid.points(all_singular_points(ModelId::VPJC, qs, 0.0)), 0.0);
    }
    throw UsageError("figure: name must be fig1 or fig2");
}

Table cmd_eos_table(const RunConfig& config, double qv, std::ostream& err) {
    const ModelId model = model_or(config, ModelId::FN);
    if (model != ModelId::FN && model != ModelId::CKN && model != ModelId::PVC) {
        throw UsageError("eos: model must be fn, ckn or pvc");
    }
    if (model == ModelId::PVC && !(qv < 1.0)) throw UsageError("eos: pvc requires 0 < q < 1");
    const Deformation q(qv);
    const Grid grid = config.grid.value_or(model == ModelId::PVC ? Grid{0.01, 0.45, 45} : Grid{0.05, 1.8, 36});
    const auto zs = grid.points();
    std::vector<thermo::EosPoint> points(zs.size());
    std::vector<char> ok(zs.size(), 0);
    const auto n = static_cast<long>(zs.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        try {
            switch (model) {
                case ModelId::FN: points[k] = thermo::fn_eos(q, zs[k], config.tol); break;
                case ModelId::CKN: points[k] = thermo::ckn_eos(q, zs[k], config.tol); break;
                default: points[k] = thermo::pvc_eos(q, zs[k], config.multiplicity, config.tol); break;
            }
            ok[k] = 1;
        } catch (const std::exception&) {
            ok[k] = 0;
        }
    }
    Table table;
    table.header = {"z", "pressure", "density", "energy_density", "entropy"};
    const double nan = std::nan("");
    int skipped = 0;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        if (ok[k]) {
            table.rows.push_back({zs[k], points[k].pressure, points[k].density, points[k].energy_density, points[k].entropy});
        } else {
            table.rows.push_back({zs[k], nan, nan, nan, nan});
            ++skipped;
        }
    }
    if (skipped) {
        err << fmt::format("note: {} of {} rows for {} q={:g} lie outside the series convergence domain; cells left empty\n",
                           skipped, zs.size(), to_string(model), qv);
    }
    return table;
}

std::string cmd_virial(const RunConfig& config) {
    const ModelId model = model_or(config, ModelId::FN);
    if (model != ModelId::FN && model != ModelId::CKN) throw UsageError("virial: model must be fn or ckn");
    if (config.orders < 2 || config.orders > thermo::kMaxVirialOrder) {
        throw UsageError(fmt::format("virial: orders must lie in [2, {}]", thermo::kMaxVirialOrder));
    }
    const auto qs = q_list_or(config, {0.3, 0.5, 0.9, 1.5});
    std::vector<std::vector<double>> fits;
    std::string report = fmt::format("model {}, orders {}\n", to_string(model), config.orders);
    for (double qv : qs) {
        fits.push_back(thermo::virial_fit(model, Deformation(qv), config.orders));
        report += fmt::format("q={:g}", qv);
        for (std::size_t k = 0; k < fits.back().size(); ++k) report += fmt::format(" a{}={:.10g}", k + 1, fits.back()[k]);
        report += '\n';
    }
    for (int k = 2; k <= config.orders; ++k) {
        double lo = fits.front()[k - 1], hi = lo;
        for (const auto& f : fits) {
            lo = std::min(lo, f[k - 1]);
            hi = std::max(hi, f[k - 1]);
        }
        std::string target = "n/a";
        if (k == 2) target = "2^-5/2";
        if (k == 3) target = "1/8 - 2*3^-5/2";
        const double spread = hi - lo;
        report += fmt::format("a{} = {:.10f}, target {}, {}\n", k, fits.front()[k - 1], target,
                              spread < 1e-10 ? std::string("spread < 1e-10") : fmt::format("spread = {:.3g}", spread));
    }
    return report;
}

Table cmd_mu(const RunConfig& config) {
    const ModelId model = model_or(config, ModelId::FN);
    if (model != ModelId::FN && model != ModelId::CKN) throw UsageError("mu: model must be fn or ckn");
    const auto qs = q_list_or(config, {1.0});
    const Grid grid = config.grid.value_or(Grid{0.01, 0.2, 20});
    if (grid.start <= 0.0 || grid.stop > 0.2) throw UsageError("mu: t grid must lie in (0, 0.2]");
    const auto ts = grid.points();
    Table table = first_column("t", ts);
    for (double qv : qs) {
        const Deformation q(qv);
        const bool ckn = model == ModelId::CKN;
        append_column(table, q_label("mu_lowT", qv), kernels::map(ts, [&](double t) {
                          return ckn ? thermo::ckn_mu_lowT(t, q) : thermo::fn_mu_lowT(t, q);
                      }));
        append_column(table, q_label("mu_numeric", qv), kernels::map(ts, [&](double t) {
                          return ckn ? thermo::ckn_mu_numeric(t, q, config.sommerfeld_terms)
                                     : thermo::fn_mu_numeric(t, q, config.sommerfeld_terms);
                      }));
    }
    return table;
}

Table cmd_spectrum(const RunConfig& config) {
    const ModelId model = model_or(config, ModelId::VPJC);
    const auto qs = q_list_or(config, {0.5});
    if (config.dim < 1) throw UsageError("spectrum: dim must be >= 1");
    std::vector<double> ns(config.dim);
    for (int n = 0; n < config.dim; ++n) ns[n] = n;
    Table table = first_column("n", ns);
    for (double qv : qs) {
        const auto spectrum = qnum::make_spectrum(model, Deformation(qv), config.dim - 1);
        append_column(table, q_label("g", qv), spectrum.values);
    }
    return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deformed fermion oscillators: spectra, representations, distributions and thermodynamics"};
    app.set_config("--config", "", "key=value file; flags override its values");

    RunConfig config;
    std::string model_text, q_text, grid_text, group_text;
    app.add_option("command", config.command, "dist | eos | virial | mu | spectrum | check | figure")
        ->required()
        ->check(CLI::IsMember({"dist", "eos", "virial", "mu", "spectrum", "check", "figure"}));
    app.add_option("name", group_text, "figure name (fig1 | fig2)");
    app.add_option("--model", model_text, "fn | ckn | pvc | vpjc (spectrum also accepts arikcoon)");
    app.add_option("--q", q_text, "comma-separated deformation values; a/b allowed");
    app.add_option("--grid", grid_text, "start:stop:count");
    app.add_option("--xi", config.xi, "beta mu for fig1");
    app.add_option("--tol", config.tol, "series tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed, "seed for randomized checks");
    app.add_option("--out", config.output_path, "output file (default: standard output)");
    app.add_option("--group", group_text, "check group, or figure name");
    app.add_option("--orders", config.orders, "virial orders (2..6)");
    app.add_option("--dim", config.dim, "levels for spectrum / representation audit");
    app.add_option("--terms", config.sommerfeld_terms, "Sommerfeld bracket terms for mu (1..3)");
    app.add_option("--g", config.multiplicity, "PVC multiplicity factor");
    app.add_flag("--strict", config.strict, "check: negative-norm levels fail the run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (!model_text.empty()) {
            config.model = parse_model(model_text);
            if (!config.model) throw UsageError(fmt::format("unknown model '{}'", model_text));
        }
        if (!q_text.empty()) config.q_list = parse_q_list(q_text);
        if (!grid_text.empty()) config.grid = parse_grid(grid_text);
        if (!group_text.empty()) config.group = group_text;

        const std::string& cmd = config.command;
        if (cmd == "dist") {
            emit(config, to_csv(cmd_dist(config)), out);
        } else if (cmd == "figure") {
            emit(config, to_csv(cmd_figure(config)), out);
        } else if (cmd == "mu") {
            emit(config, to_csv(cmd_mu(config)), out);
        } else if (cmd == "spectrum") {
            emit(config, to_csv(cmd_spectrum(config)), out);
        } else if (cmd == "virial") {
            emit(config, cmd_virial(config), out);
        } else if (cmd == "eos") {
            const auto qs = q_list_or(config, {1.0});
            if (qs.size() > 1 && config.output_path.empty()) throw UsageError("eos: several q values need --out");
            for (double qv : qs) {
                const std::string csv = to_csv(cmd_eos_table(config, qv, err));
                if (config.output_path.empty()) {
                    out << csv;
                } else {
                    write_atomic(qs.size() > 1 ? per_q_path(config.output_path, qv) : config.output_path, csv);
                }
            }
        } else if (cmd == "check") {
            check::CheckOptions options;
            options.group = config.group;
            options.seed = config.seed;
            options.model = config.model;
            options.q_list = config.q_list;
            options.dim = config.dim;
            options.strict = config.strict;
            if (options.model && options.q_list.empty()) throw UsageError("check: --model needs --q");
            bool all_pass = true;
            std::string report;
            for (const auto& r : check::run_checks(options)) {
                report += check::format_line(r) + '\n';
                all_pass = all_pass && r.pass;
            }
            emit(config, report, out);
            return all_pass ? kSuccess : kCheckFailure;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kSuccess;
}

}  // namespace qfermi::cli
