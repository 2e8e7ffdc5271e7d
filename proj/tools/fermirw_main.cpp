// Command-line front end: model loading, grid sweeps over the coordinate
// transforms / metric / velocities, horizon values, figure data emission,
// and the verification suite runner.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/configuration error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermirw/kinematics.hpp"
#include "fermirw/metric.hpp"
#include "fermirw/model_io.hpp"
#include "fermirw/verification.hpp"

namespace {

using fermirw::ScaleFactorModel;
using fermirw::chart::ChartContext;
using json = nlohmann::ordered_json;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ModelOptions {
    std::string name;
    std::string json_spec; // file path or inline JSON object
    double alpha = 1.0;
    double lambda = 3.0;
    double gamma = 1.0;
    double amplitude = 1.0;
    int k = 0;
    bool k_given = false;
};

void add_model_flags(CLI::App* cmd, ModelOptions& opts) {
    cmd->add_option("--model", opts.name,
                    "built-in model: power_law | lambda_fluid | sinh | log | milne");
    cmd->add_option("--model-json", opts.json_spec,
                    "model spec as JSON (inline object or file path)");
    cmd->add_option("--alpha", opts.alpha, "power-law exponent");
    cmd->add_option("--lambda", opts.lambda, "cosmological constant of the fluid model");
    cmd->add_option("--gamma", opts.gamma, "equation-of-state parameter, in (0, 2]");
    cmd->add_option("--A", opts.amplitude, "fluid model amplitude");
    cmd->add_option("--k", opts.k, "spatial curvature index, 0 or -1")
        ->check(CLI::IsMember({0, -1}))
        ->each([&opts](const std::string&) { opts.k_given = true; });
}

struct ResolvedModel {
    ScaleFactorModel model;
    int k;
};

ResolvedModel resolve_model(const ModelOptions& opts) {
    if (!opts.json_spec.empty()) {
        std::string text = opts.json_spec;
        if (!text.empty() && text[0] != '{') {
            std::ifstream in(text);
            if (!in) {
                throw std::invalid_argument("cannot open model file: " + text);
            }
            text.assign(std::istreambuf_iterator<char>(in),
                        std::istreambuf_iterator<char>());
        }
        return {fermirw::model_from_json_string(text), opts.k};
    }
    if (opts.name.empty()) {
        throw std::invalid_argument("no model given (use --model or --model-json)");
    }
    if (opts.name == "power_law") {
        return {ScaleFactorModel::power_law(opts.alpha), opts.k};
    }
    if (opts.name == "lambda_fluid") {
        return {ScaleFactorModel::lambda_fluid(opts.lambda, opts.gamma, opts.amplitude),
                opts.k};
    }
    if (opts.name == "sinh") return {ScaleFactorModel::sinh_model(), opts.k};
    if (opts.name == "log") return {ScaleFactorModel::log_model(), opts.k};
    if (opts.name == "milne") {
        // the natural geometry of a(t) = t has negative spatial curvature
        return {ScaleFactorModel::power_law(1.0), opts.k_given ? opts.k : -1};
    }
    if (opts.name == "tabulated") {
        throw std::invalid_argument("tabulated models must be supplied via --model-json");
    }
    throw std::invalid_argument("unknown model name: " + opts.name);
}

struct ToleranceOptions {
    fermirw::numerics::Tolerances tol;
    void add_flags(CLI::App* cmd) {
        cmd->add_option("--quad-rel", tol.quad_rel, "relative quadrature tolerance");
        cmd->add_option("--quad-abs", tol.quad_abs, "absolute quadrature tolerance");
        cmd->add_option("--root-rel", tol.root_rel, "relative root-finding tolerance");
        cmd->add_option("--tol-condition", tol.tol_condition,
                        "slack on the regularity condition");
        cmd->add_option("--max-subdivisions", tol.max_subdivisions,
                        "max adaptive bisection depth");
        cmd->add_option("--tail-factor", tol.tail_probe_factor,
                        "panel growth factor for improper integrals");
    }
};

struct GridOptions {
    std::optional<double> single;
    std::optional<double> min, max;
    int count = 0;

    void add_flags(CLI::App* cmd, const std::string& stem, const std::string& what) {
        cmd->add_option("--" + stem, single, what + " (single value)");
        cmd->add_option("--" + stem + "-min", min, what + " range start");
        cmd->add_option("--" + stem + "-max", max, what + " range end");
        cmd->add_option("--" + stem + "-count", count, what + " range point count (default 10)");
    }

    bool given() const { return single.has_value() || min.has_value(); }

    std::vector<double> values(const std::string& stem) const {
        if (single.has_value()) {
            if (min || max || count > 0) {
                throw std::invalid_argument("--" + stem + " conflicts with --" + stem +
                                            "-min/-max/-count");
            }
            return {*single};
        }
        if (!min || !max) {
            throw std::invalid_argument("grid for " + stem +
                                        " needs --" + stem + " or --" + stem +
                                        "-min and --" + stem + "-max");
        }
        const int n = count > 0 ? count : 10;
        if (n == 1) return {*min};
        if (!(*max > *min)) {
            throw std::invalid_argument("--" + stem + "-max must exceed --" + stem + "-min");
        }
        std::vector<double> out;
        out.reserve(n);
        for (int i = 0; i < n; ++i) {
            out.push_back(*min + (*max - *min) * i / (n - 1));
        }
        return out;
    }
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;
    void add_flags(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", path, "output file (default stdout)");
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;

    json& new_row() {
        rows.emplace_back(json::object());
        return rows.back();
    }
};

void write_output(const Table& table, const ResolvedModel* resolved,
                  const std::string& command, const OutputOptions& out_opts) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_opts.path.empty()) {
        file.open(out_opts.path);
        if (!file) {
            throw std::invalid_argument("cannot open output file: " + out_opts.path);
        }
        os = &file;
    }
    if (out_opts.format == "csv") {
        for (size_t c = 0; c < table.columns.size(); ++c) {
            *os << (c ? "," : "") << table.columns[c];
        }
        *os << "\n";
        for (const json& row : table.rows) {
            for (size_t c = 0; c < table.columns.size(); ++c) {
                if (c) *os << ",";
                const auto it = row.find(table.columns[c]);
                if (it == row.end() || it->is_null()) continue;
                if (it->is_number_float()) {
                    *os << g17(it->get<double>());
                } else if (it->is_boolean()) {
                    *os << (it->get<bool>() ? "true" : "false");
                } else if (it->is_string()) {
                    *os << it->get<std::string>();
                } else {
                    *os << it->dump();
                }
            }
            *os << "\n";
        }
        return;
    }
    json doc;
    doc["command"] = command;
    if (resolved != nullptr) {
        doc["model"] = fermirw::model_to_json(resolved->model);
        doc["k"] = resolved->k;
    }
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    *os << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int run_chart(const ResolvedModel& resolved, const ChartContext& ctx,
              const std::string& direction, const GridOptions& t_grid,
              const GridOptions& chi_grid, const GridOptions& tau_grid,
              const GridOptions& rho_grid, std::optional<double> theta,
              std::optional<double> phi, const OutputOptions& out_opts) {
    Table table;
    table.columns = {"t", "chi", "tau", "rho", "status", "rho_err"};
    // the chart is radially symmetric: angles ride along unchanged
    const bool angles = theta.has_value() || phi.has_value();
    if (angles) {
        table.columns.push_back("theta");
        table.columns.push_back("phi");
    }
    auto put_angles = [&](json& row, const std::optional<double>& th,
                          const std::optional<double>& ph) {
        if (!angles) return;
        if (th) row["theta"] = *th;
        if (ph) row["phi"] = *ph;
    };
    if (direction == "to-fermi") {
        for (double t : t_grid.values("t")) {
            for (double chi : chi_grid.values("chi")) {
                json& row = table.new_row();
                row["t"] = t;
                row["chi"] = chi;
                try {
                    const fermirw::chart::FermiPoint f = ctx.to_fermi({t, chi, theta, phi});
                    row["tau"] = f.tau;
                    row["rho"] = f.rho;
                    row["status"] = "ok";
                    if (chi > 0.0) {
                        row["rho_err"] = ctx.proper_length_q(f.tau, t).abs_error_estimate;
                    } else {
                        row["rho_err"] = 0.0;
                    }
                    put_angles(row, f.theta, f.phi);
                } catch (const fermirw::chart::BeyondHorizonError&) {
                    row["status"] = "beyond_horizon";
                } catch (const fermirw::chart::OutOfChartError&) {
                    row["status"] = "out_of_chart";
                }
            }
        }
    } else {
        table.columns = {"tau", "rho", "t", "chi", "status", "chi_err"};
        if (angles) {
            table.columns.push_back("theta");
            table.columns.push_back("phi");
        }
        for (double tau : tau_grid.values("tau")) {
            for (double rho : rho_grid.values("rho")) {
                json& row = table.new_row();
                row["tau"] = tau;
                row["rho"] = rho;
                try {
                    const fermirw::chart::CurvaturePoint p =
                        ctx.from_fermi({tau, rho, theta, phi});
                    row["t"] = p.t;
                    row["chi"] = p.chi;
                    row["status"] = "ok";
                    row["chi_err"] = rho > 0.0
                                         ? ctx.chi_t0_q(p.t, tau).abs_error_estimate
                                         : 0.0;
                    put_angles(row, p.theta, p.phi);
                } catch (const fermirw::chart::OutOfChartError&) {
                    row["status"] = "out_of_chart";
                }
            }
        }
    }
    write_output(table, &resolved, "chart", out_opts);
    return 0;
}

int run_metric(const ResolvedModel& resolved, const ChartContext& ctx,
               const GridOptions& tau_grid, const GridOptions& rho_grid,
               const GridOptions& rho_frac_grid, const OutputOptions& out_opts) {
    Table table;
    table.columns = {"tau",         "rho",        "t0",           "g_tautau",
                     "g_sigma_form", "g_t0_form", "g_chi_form",   "form_spread",
                     "consistent",  "lambda_k",   "angular_coeff", "status"};
    for (double tau : tau_grid.values("tau")) {
        std::vector<double> rhos;
        if (rho_frac_grid.given()) {
            const double radius = ctx.max_radius(tau);
            for (double f : rho_frac_grid.values("rho-frac")) rhos.push_back(f * radius);
        } else {
            rhos = rho_grid.values("rho");
        }
        for (double rho : rhos) {
            json& row = table.new_row();
            row["tau"] = tau;
            row["rho"] = rho;
            try {
                const fermirw::metric::MetricSample sample =
                    fermirw::metric::line_element(ctx, {tau, rho, {}, {}});
                const fermirw::metric::GttSample g =
                    fermirw::metric::g_tau_tau_all(ctx, tau, rho);
                row["t0"] = rho > 0.0
                                ? ctx.time_at_sigma(tau, ctx.sigma_from_rho(tau, rho).sigma)
                                : tau;
                row["g_tautau"] = sample.g_tautau;
                row["g_sigma_form"] = g.sigma_form;
                row["g_t0_form"] = g.t0_form;
                row["g_chi_form"] = g.chi_derivative_form;
                row["form_spread"] = g.spread;
                row["consistent"] = g.consistent;
                row["lambda_k"] = sample.lambda_k;
                row["angular_coeff"] = sample.angular_coeff;
                row["status"] = "ok";
            } catch (const fermirw::chart::OutOfChartError&) {
                row["status"] = "out_of_chart";
            }
        }
    }
    write_output(table, &resolved, "metric", out_opts);
    return 0;
}

int run_radius(const ResolvedModel& resolved, const ChartContext& ctx,
               const GridOptions& tau_grid, const OutputOptions& out_opts) {
    Table table;
    table.columns = {"tau", "rho_max", "rho_max_err", "bound_half_pi_over_H",
                     "bound_inv_H"};
    for (double tau : tau_grid.values("tau")) {
        const fermirw::numerics::QuadResult radius = ctx.max_radius_q(tau);
        const double inv_h = 1.0 / ctx.model().hubble(tau);
        json& row = table.new_row();
        row["tau"] = tau;
        row["rho_max"] = radius.value;
        row["rho_max_err"] = radius.abs_error_estimate;
        row["bound_half_pi_over_H"] = 1.5707963267948966 * inv_h;
        row["bound_inv_H"] = inv_h;
    }
    write_output(table, &resolved, "radius", out_opts);
    return 0;
}

int run_horizon(const ResolvedModel& resolved, const ChartContext& ctx,
                const GridOptions& t0_grid, const OutputOptions& out_opts) {
    Table table;
    table.columns = {"t0", "chi_horiz", "abs_error"};
    for (double t0 : t0_grid.values("t0")) {
        const fermirw::chart::HorizonValue h = ctx.chi_horizon(t0);
        json& row = table.new_row();
        row["t0"] = t0;
        if (h.finite) {
            row["chi_horiz"] = h.chi;
            row["abs_error"] = h.abs_error;
        } else {
            row["chi_horiz"] = "infinite";
            row["abs_error"] = 0.0;
        }
    }
    write_output(table, &resolved, "horizon", out_opts);
    return 0;
}

int run_velocity(const ResolvedModel& resolved, const ChartContext& ctx,
                 const GridOptions& tau_grid, const GridOptions& t0_grid,
                 const OutputOptions& out_opts) {
    Table table;
    table.columns = {"tau",        "t0",          "rho",        "v_kin",
                     "v_fermi",    "hubble_term", "correction", "light_bound",
                     "regime",     "decomposition_residual", "status"};
    for (double tau : tau_grid.values("tau")) {
        for (double t0 : t0_grid.values("t0")) {
            json& row = table.new_row();
            row["tau"] = tau;
            row["t0"] = t0;
            if (!(t0 > 0.0) || !(t0 < tau)) {
                row["status"] = "out_of_chart";
                continue;
            }
            const fermirw::kinematics::ClassifiedSample c =
                fermirw::kinematics::classify_speeds(ctx, tau, t0);
            row["rho"] = c.sample.rho;
            row["v_kin"] = c.sample.v_kin;
            row["v_fermi"] = c.sample.v_fermi;
            row["hubble_term"] = c.sample.hubble_term;
            row["correction"] = c.sample.correction;
            row["light_bound"] = c.sample.light_bound;
            row["regime"] = fermirw::kinematics::to_string(c.sample.regime);
            row["decomposition_residual"] = c.sample.decomposition_residual;
            row["status"] = c.ordering.asserted && !c.ordering.holds
                                ? "ordering_violated"
                                : "ok";
        }
    }
    write_output(table, &resolved, "velocity", out_opts);
    return 0;
}

int run_figure1(const fermirw::numerics::Tolerances& tol, const GridOptions& tau_grid,
                const OutputOptions& out_opts) {
    double tau_min = 0.1, tau_max = 10.0;
    int count = 25;
    if (tau_grid.min) tau_min = *tau_grid.min;
    if (tau_grid.max) tau_max = *tau_grid.max;
    if (tau_grid.count > 0) count = tau_grid.count;
    const std::vector<fermirw::verify::FigureRow> rows =
        fermirw::verify::figure_rows(tau_min, tau_max, count, tol);

    Table table;
    table.columns = {"alpha", "tau", "diameter"};
    for (const auto& r : rows) {
        json& row = table.new_row();
        row["alpha"] = r.alpha;
        row["tau"] = r.tau;
        row["diameter"] = r.diameter;
    }
    write_output(table, nullptr, "figure1", out_opts);
    return 0;
}

int run_verify(const ModelOptions& model_opts, const fermirw::numerics::Tolerances& tol,
               std::uint64_t seed) {
    std::vector<fermirw::verify::CheckResult> results;
    if (model_opts.name.empty() && model_opts.json_spec.empty()) {
        results = fermirw::verify::acceptance_battery(tol, seed);
    } else {
        const ResolvedModel resolved = resolve_model(model_opts);
        const ChartContext ctx(resolved.model, resolved.k, tol);
        std::printf("model: %s (k=%d)\n", resolved.model.name().c_str(), resolved.k);
        results = fermirw::verify::model_checks(ctx, seed);
    }
    bool all_pass = true;
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        all_pass = all_pass && r.pass;
        std::printf("[%2zu/%zu] %s %-32s margin=%+.3e  %s\n", i + 1, results.size(),
                    r.pass ? "PASS" : "FAIL", r.id.c_str(), r.margin, r.detail.c_str());
    }
    std::printf("%s: %zu checks, %zu failed\n", all_pass ? "PASS" : "FAIL",
                results.size(),
                static_cast<size_t>(std::count_if(results.begin(), results.end(),
                                                  [](const auto& r) { return !r.pass; })));
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fermi coordinate charts of comoving observers in "
                 "Robertson-Walker cosmologies"};
    app.require_subcommand(1);

    ModelOptions model_opts;
    ToleranceOptions tol_opts;
    OutputOptions out_opts;
    GridOptions t_grid, chi_grid, tau_grid, rho_grid, rho_frac_grid, t0_grid;
    std::string direction = "to-fermi";
    std::optional<double> theta, phi;
    std::uint64_t seed = 20250809;

    CLI::App* chart_cmd = app.add_subcommand("chart", "map points between curvature and Fermi coordinates");
    add_model_flags(chart_cmd, model_opts);
    tol_opts.add_flags(chart_cmd);
    out_opts.add_flags(chart_cmd);
    chart_cmd->add_option("--direction", direction, "to-fermi | from-fermi")
        ->check(CLI::IsMember({"to-fermi", "from-fermi"}));
    t_grid.add_flags(chart_cmd, "t", "cosmological time");
    chi_grid.add_flags(chart_cmd, "chi", "radial coordinate");
    tau_grid.add_flags(chart_cmd, "tau", "proper time");
    rho_grid.add_flags(chart_cmd, "rho", "proper distance");
    chart_cmd->add_option("--theta", theta, "polar angle (passed through unchanged)");
    chart_cmd->add_option("--phi", phi, "azimuthal angle (passed through unchanged)");

    CLI::App* metric_cmd = app.add_subcommand("metric", "Fermi metric coefficients on a grid");
    add_model_flags(metric_cmd, model_opts);
    tol_opts.add_flags(metric_cmd);
    out_opts.add_flags(metric_cmd);
    tau_grid.add_flags(metric_cmd, "tau", "proper time");
    rho_grid.add_flags(metric_cmd, "rho", "proper distance");
    rho_frac_grid.add_flags(metric_cmd, "rho-frac", "proper distance as a fraction of the spaceslice radius");

    CLI::App* radius_cmd = app.add_subcommand("radius", "spaceslice proper radii and Hubble bounds");
    add_model_flags(radius_cmd, model_opts);
    tol_opts.add_flags(radius_cmd);
    out_opts.add_flags(radius_cmd);
    tau_grid.add_flags(radius_cmd, "tau", "proper time");

    CLI::App* horizon_cmd = app.add_subcommand("horizon", "event-horizon radial coordinate");
    add_model_flags(horizon_cmd, model_opts);
    tol_opts.add_flags(horizon_cmd);
    out_opts.add_flags(horizon_cmd);
    t0_grid.add_flags(horizon_cmd, "t0", "cosmological time");

    CLI::App* velocity_cmd = app.add_subcommand("velocity", "comoving test-particle velocity samples");
    add_model_flags(velocity_cmd, model_opts);
    tol_opts.add_flags(velocity_cmd);
    out_opts.add_flags(velocity_cmd);
    tau_grid.add_flags(velocity_cmd, "tau", "observer proper time");
    t0_grid.add_flags(velocity_cmd, "t0", "particle cosmological time");

    CLI::App* figure_cmd = app.add_subcommand("figure1", "spaceslice diameter versus proper time for three power laws");
    tol_opts.add_flags(figure_cmd);
    out_opts.add_flags(figure_cmd);
    tau_grid.add_flags(figure_cmd, "tau", "proper time");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite (fixed battery, or per-model checks with --model)");
    add_model_flags(verify_cmd, model_opts);
    tol_opts.add_flags(verify_cmd);
    verify_cmd->add_option("--seed", seed, "random seed for the property probes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints help/error text
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        tol_opts.tol.validate();
        if (verify_cmd->parsed()) {
            return run_verify(model_opts, tol_opts.tol, seed);
        }
        if (figure_cmd->parsed()) {
            return run_figure1(tol_opts.tol, tau_grid, out_opts);
        }
        const ResolvedModel resolved = resolve_model(model_opts);
        const ChartContext ctx(resolved.model, resolved.k, tol_opts.tol);
        if (chart_cmd->parsed()) {
            return run_chart(resolved, ctx, direction, t_grid, chi_grid, tau_grid,
                             rho_grid, theta, phi, out_opts);
        }
        if (metric_cmd->parsed()) {
            return run_metric(resolved, ctx, tau_grid, rho_grid, rho_frac_grid, out_opts);
        }
        if (radius_cmd->parsed()) {
            return run_radius(resolved, ctx, tau_grid, out_opts);
        }
        if (horizon_cmd->parsed()) {
            return run_horizon(resolved, ctx, t0_grid, out_opts);
        }
        if (velocity_cmd->parsed()) {
            return run_velocity(resolved, ctx, tau_grid, t0_grid, out_opts);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
