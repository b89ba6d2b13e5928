// Command-line front end: emits the standard experiment tables as CSV/JSON
// and runs the validation suite.
//
//   vqdyn negativity-dynamics [--gamma0 F] [--theta F | --theta-grid a:b:n]
//                             [--n-atoms K | --n-list 1,3,6,9]
//                             [--t-grid a:b:n] [--output PATH] [--format csv|json]
//   vqdyn bound-spectrum      [--gamma0-grid a:b:n] [--theta F] [--n-list ...]
//   vqdyn negativity-map      [--gamma0-grid a:b:n] [--theta-grid a:b:n] [--t F]
//   vqdyn validate            [--modes M] [--bandwidth W] [--dt F]
//                             [--cutoff-at-zero] [--from FILE]
//
// A flat key=value config file (--config) mirrors the long flag names;
// command-line flags win over config-file values. Relative --output paths
// resolve under $VQDYN_OUT_DIR when that is set. Exit codes: 0 success,
// 1 usage/config error, 2 validation failure, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vqdyn/config.hpp"
#include "vqdyn/experiments.hpp"
#include "vqdyn/table.hpp"
#include "vqdyn/validate.hpp"

namespace {

struct CliOptions {
    double gamma0 = 0.0, lambda = 0.0, theta = 0.0, t = 0.0, omega0 = 0.0;
    std::string theta_grid, t_grid, gamma0_grid, n_list;
    int n_atoms = 0, threads = 0;
    int modes = 0;
    double bandwidth = 0.0, dt = 0.0, t_end = 0.0;
    bool cutoff_at_zero = false;
    std::string output, format, from_file, config_file;
};

void add_common_options(CLI::App* sub, CliOptions* o) {
    sub->add_option("--gamma0", o->gamma0, "decay rate gamma0 (units of omega0)");
    sub->add_option("--lambda", o->lambda, "Lorentzian spectral width lambda");
    sub->add_option("--omega0", o->omega0, "central frequency omega0");
    sub->add_option("--theta", o->theta, "interference parameter theta in [0,1]");
    auto* atoms = sub->add_option("--n-atoms", o->n_atoms, "atoms per reservoir");
    sub->add_option("--n-list", o->n_list, "comma list of atom counts, e.g. 1,3,6,9")
        ->excludes(atoms);
    sub->add_option("--threads", o->threads, "worker threads for grid sweeps");
    sub->add_option("--output", o->output, "output file (default: stdout)");
    sub->add_option("--format", o->format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", o->config_file,
                    "flat key=value config file mirroring the flag names");
}

/// Precedence: defaults, then the config file, then command-line flags.
void apply_common(const CLI::App& sub, const CliOptions& o, vqdyn::RunConfig* cfg) {
    if (sub.count("--config")) {
        std::ifstream in(o.config_file, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open config file: " + o.config_file);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        vqdyn::apply_config_text(*cfg, text);
    }
    if (sub.count("--gamma0")) cfg->params.gamma0 = o.gamma0;
    if (sub.count("--lambda")) cfg->params.lambda = o.lambda;
    if (sub.count("--omega0")) cfg->params.omega0 = o.omega0;
    if (sub.count("--theta")) {
        cfg->params.theta = o.theta;
        cfg->theta_grid = {o.theta};
    }
    if (sub.count("--n-atoms")) {
        cfg->params.n_atoms = o.n_atoms;
        cfg->n_list = {o.n_atoms};
    }
    if (sub.count("--n-list")) cfg->n_list = vqdyn::parse_int_list(o.n_list);
    if (sub.count("--threads")) cfg->threads = o.threads;
    if (sub.count("--output")) cfg->output = o.output;
    if (sub.count("--format"))
        cfg->format = (o.format == "json") ? vqdyn::OutputFormat::json : vqdyn::OutputFormat::csv;
}

/// Relative output paths land under $VQDYN_OUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("VQDYN_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    }
    return p;
}

void emit_table(const vqdyn::RunConfig& cfg, const vqdyn::Table& table) {
    std::string text;
    if (cfg.format == vqdyn::OutputFormat::csv)
        text = table.to_csv();
    else
        text = table.to_json(vqdyn::config_echo(cfg)).dump(2) + "\n";

    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    const auto path = resolve_output(cfg.output);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path.string());
    out << text;
    std::cerr << "wrote " << table.rows.size() << " rows to " << path.string() << "\n";
}

int report_checks(const std::vector<vqdyn::CheckResult>& checks) {
    bool all_pass = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << " (measured " << vqdyn::format_significant(c.deviation, 3) << ", threshold "
                  << vqdyn::format_significant(c.threshold, 3) << ")";
        if (!c.detail.empty()) std::cout << " - " << c.detail;
        std::cout << "\n";
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 2;
}

int run_validate(const vqdyn::RunConfig& cfg) {
    if (!cfg.from_file.empty()) {
        const auto path = resolve_output(cfg.from_file);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open --from file: " + path.string());
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        vqdyn::Table table;
        nlohmann::json echo;
        const bool as_json = path.extension() == ".json" || cfg.format == vqdyn::OutputFormat::json;
        if (as_json) {
            try {
                table = vqdyn::Table::from_json(nlohmann::json::parse(text), &echo);
            } catch (const nlohmann::json::exception& e) {
                throw std::invalid_argument("cannot parse JSON table " + path.string() + ": " +
                                            e.what());
            }
        } else {
            table = vqdyn::Table::from_csv(text);
        }
        return report_checks({vqdyn::recheck_table(cfg, table, echo)});
    }
    return report_checks(vqdyn::run_validation(cfg));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative V-type qutrit dynamics: entanglement protection experiments"};
    app.set_version_flag("--version", "vqdyn 1.0.0");
    app.require_subcommand(1);

    CliOptions dyn_o, spec_o, map_o, val_o;

    CLI::App* dyn = app.add_subcommand("negativity-dynamics",
                                       "negativity of the entangled pair over a time grid");
    add_common_options(dyn, &dyn_o);
    auto* dyn_t = dyn->add_option("--t", dyn_o.t, "single evaluation time (alternative to --t-grid)");
    dyn->add_option("--t-grid", dyn_o.t_grid, "time grid a:b:n")->excludes(dyn_t);
    dyn->add_option("--theta-grid", dyn_o.theta_grid, "theta grid a:b:n")
        ->excludes(dyn->get_option("--theta"));

    CLI::App* spec = app.add_subcommand("bound-spectrum",
                                        "bound-state energies over a gamma0 grid");
    add_common_options(spec, &spec_o);
    spec->add_option("--gamma0-grid", spec_o.gamma0_grid, "gamma0 grid a:b:n");

    CLI::App* map = app.add_subcommand("negativity-map",
                                       "negativity at fixed t over the gamma0 x theta grid");
    add_common_options(map, &map_o);
    map->add_option("--gamma0-grid", map_o.gamma0_grid, "gamma0 grid a:b:n");
    map->add_option("--theta-grid", map_o.theta_grid, "theta grid a:b:n")
        ->excludes(map->get_option("--theta"));
    map->add_option("--t", map_o.t, "evaluation time");

    CLI::App* val = app.add_subcommand("validate",
                                       "run the validation suite, or re-check an emitted table");
    add_common_options(val, &val_o);
    val->add_option("--modes", val_o.modes, "bath oracle mode count");
    val->add_option("--bandwidth", val_o.bandwidth, "bath half-bandwidth (default 40*lambda)");
    val->add_option("--dt", val_o.dt, "oracle integrator step (default 0.1/max(W, lambda))");
    val->add_option("--t-end", val_o.t_end, "oracle comparison horizon");
    val->add_flag("--cutoff-at-zero", val_o.cutoff_at_zero, "clip the sampled band at omega = 0");
    val->add_option("--from", val_o.from_file, "re-check a previously emitted table file");
    val->add_option("--t", val_o.t, "evaluation time assumed when re-checking a map CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(dyn)) {
            auto cfg = vqdyn::default_config(vqdyn::Experiment::negativity_dynamics);
            apply_common(*dyn, dyn_o, &cfg);
            if (dyn->count("--t")) cfg.t_grid = {dyn_o.t};
            if (dyn->count("--t-grid")) cfg.t_grid = vqdyn::parse_grid(dyn_o.t_grid);
            if (dyn->count("--theta-grid")) cfg.theta_grid = vqdyn::parse_grid(dyn_o.theta_grid);
            emit_table(cfg, vqdyn::run_negativity_dynamics(cfg));
            return 0;
        }
        if (app.got_subcommand(spec)) {
            auto cfg = vqdyn::default_config(vqdyn::Experiment::bound_spectrum);
            apply_common(*spec, spec_o, &cfg);
            if (spec->count("--gamma0-grid")) cfg.gamma0_grid = vqdyn::parse_grid(spec_o.gamma0_grid);
            emit_table(cfg, vqdyn::run_bound_spectrum(cfg));
            return 0;
        }
        if (app.got_subcommand(map)) {
            auto cfg = vqdyn::default_config(vqdyn::Experiment::negativity_map);
            apply_common(*map, map_o, &cfg);
            if (map->count("--gamma0-grid")) cfg.gamma0_grid = vqdyn::parse_grid(map_o.gamma0_grid);
            if (map->count("--theta-grid")) cfg.theta_grid = vqdyn::parse_grid(map_o.theta_grid);
            if (map->count("--t")) cfg.eval_time = map_o.t;
            emit_table(cfg, vqdyn::run_negativity_map(cfg));
            return 0;
        }
        auto cfg = vqdyn::default_config(vqdyn::Experiment::validate);
        apply_common(*val, val_o, &cfg);
        if (val->count("--modes")) cfg.oracle.modes = val_o.modes;
        if (val->count("--bandwidth")) cfg.oracle.bandwidth = val_o.bandwidth;
        if (val->count("--dt")) cfg.oracle.dt = val_o.dt;
        if (val->count("--t-end")) cfg.oracle.t_end = val_o.t_end;
        if (val->count("--cutoff-at-zero")) cfg.oracle.cutoff_at_zero = val_o.cutoff_at_zero;
        if (val->count("--from")) cfg.from_file = val_o.from_file;
        if (val->count("--t")) cfg.eval_time = val_o.t;
        cfg.validate();
        return run_validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vqdyn::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 3;
    }
}
