#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqdyn/params.hpp"

namespace vqdyn {

enum class Experiment { negativity_dynamics, bound_spectrum, negativity_map, validate };

enum class OutputFormat { csv, json };

inline const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::negativity_dynamics: return "negativity-dynamics";
        case Experiment::bound_spectrum: return "bound-spectrum";
        case Experiment::negativity_map: return "negativity-map";
        case Experiment::validate: return "validate";
    }
    return "?";
}

/// Discretized-bath settings for the validation oracle. Zero means "derive
/// from the physical parameters": bandwidth defaults to 40 lambda and dt to
/// 0.1 / max(bandwidth, lambda).
struct OracleConfig {
    int modes = 4000;
    double bandwidth = 0.0;
    double dt = 0.0;
    bool cutoff_at_zero = false;
    double t_end = 10.0;

    double resolved_bandwidth(const SystemParams& p) const {
        return bandwidth > 0.0 ? bandwidth : 40.0 * p.lambda;
    }
    double resolved_dt(const SystemParams& p) const {
        return dt > 0.0 ? dt : 0.1 / std::max(resolved_bandwidth(p), p.lambda);
    }
};

/// Everything one experiment run needs. Scalar parameters live in params;
/// the grids override the corresponding scalar where an experiment sweeps it.
struct RunConfig {
    Experiment experiment = Experiment::negativity_dynamics;
    SystemParams params{};

    std::vector<double> gamma0_grid;
    std::vector<double> theta_grid;
    std::vector<double> t_grid;
    std::vector<int> n_list;
    double eval_time = 10.0;  ///< fixed t for negativity-map

    std::string output;  ///< empty means stdout
    OutputFormat format = OutputFormat::csv;
    OracleConfig oracle{};
    int threads = 1;
    std::string from_file;  ///< validate --from: re-check a previously emitted table

    void validate() const {
        params.validate();
        for (double g : gamma0_grid)
            if (!std::isfinite(g) || g < 0.0)
                throw std::invalid_argument("RunConfig: gamma0 grid values must be >= 0");
        for (double th : theta_grid)
            if (!std::isfinite(th) || th < 0.0 || th > 1.0)
                throw std::invalid_argument("RunConfig: theta grid values must lie in [0, 1]");
        for (double t : t_grid)
            if (!std::isfinite(t) || t < 0.0)
                throw std::invalid_argument("RunConfig: t grid values must be >= 0");
        for (int n : n_list)
            if (n < 1) throw std::invalid_argument("RunConfig: n values must be >= 1");
        if (!std::isfinite(eval_time) || eval_time < 0.0)
            throw std::invalid_argument("RunConfig: t must be >= 0");
        if (threads < 1) throw std::invalid_argument("RunConfig: threads must be >= 1");
        if (oracle.modes < 2) throw std::invalid_argument("RunConfig: modes must be >= 2");
    }
};

/// "a:b:n" -> n points linearly spaced from a to b inclusive (n = 1 gives a).
inline std::vector<double> parse_grid(const std::string& spec) {
    double a = 0.0, b = 0.0;
    long n = 0;
    char trailing = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &trailing) != 3 || n < 1)
        throw std::invalid_argument("grid spec must be a:b:n with n >= 1, got '" + spec + "'");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(a);
        return out;
    }
    for (long i = 0; i < n; ++i)
        out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

/// "1,3,6,9" -> {1, 3, 6, 9}
inline std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (...) {
            throw std::invalid_argument("integer list entry '" + tok + "' in '" + spec + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

/// Apply one config-file entry; keys mirror the long CLI flag names.
inline void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto as_double = [&](const char* what) {
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (...) {
            throw std::invalid_argument(std::string("config: bad ") + what + " value '" + value +
                                        "'");
        }
    };
    const auto as_int = [&](const char* what) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (...) {
            throw std::invalid_argument(std::string("config: bad ") + what + " value '" + value +
                                        "'");
        }
    };
    const auto as_bool = [&]() {
        if (value == "true" || value == "1" || value == "yes") return true;
        if (value == "false" || value == "0" || value == "no") return false;
        throw std::invalid_argument("config: bad boolean value '" + value + "'");
    };

    if (key == "gamma0")
        cfg.params.gamma0 = as_double("gamma0");
    else if (key == "lambda")
        cfg.params.lambda = as_double("lambda");
    else if (key == "omega0")
        cfg.params.omega0 = as_double("omega0");
    else if (key == "theta") {
        cfg.params.theta = as_double("theta");
        cfg.theta_grid = {cfg.params.theta};
    } else if (key == "n-atoms") {
        cfg.params.n_atoms = as_int("n-atoms");
        cfg.n_list = {cfg.params.n_atoms};
    }
    else if (key == "n-list")
        cfg.n_list = parse_int_list(value);
    else if (key == "theta-grid")
        cfg.theta_grid = parse_grid(value);
    else if (key == "t-grid")
        cfg.t_grid = parse_grid(value);
    else if (key == "gamma0-grid")
        cfg.gamma0_grid = parse_grid(value);
    else if (key == "t")
        cfg.eval_time = as_double("t");
    else if (key == "threads")
        cfg.threads = as_int("threads");
    else if (key == "output")
        cfg.output = value;
    else if (key == "format") {
        if (value != "csv" && value != "json")
            throw std::invalid_argument("config: format must be csv or json");
        cfg.format = (value == "json") ? OutputFormat::json : OutputFormat::csv;
    } else if (key == "modes")
        cfg.oracle.modes = as_int("modes");
    else if (key == "bandwidth")
        cfg.oracle.bandwidth = as_double("bandwidth");
    else if (key == "dt")
        cfg.oracle.dt = as_double("dt");
    else if (key == "t-end")
        cfg.oracle.t_end = as_double("t-end");
    else if (key == "cutoff-at-zero")
        cfg.oracle.cutoff_at_zero = as_bool();
    else
        throw std::invalid_argument("config: unknown key '" + key + "'");
}

/// Flat key=value config text: one entry per line, '#' comments, blank lines
/// ignored, whitespace around tokens trimmed.
inline void apply_config_text(RunConfig& cfg, const std::string& text) {
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
    };
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

/// Shipped defaults cover the standard demonstration setup: dynamics and spectra at
/// lambda = 0.8 with gamma0 = 1, the map at t = 10 over the unit
/// gamma0 x theta square for N in {1, 3, 6, 9}.
inline RunConfig default_config(Experiment e) {
    RunConfig cfg;
    cfg.experiment = e;
    cfg.params.lambda = 0.8;
    cfg.params.gamma0 = 1.0;
    switch (e) {
        case Experiment::negativity_dynamics:
            cfg.theta_grid = {0.5, 1.0};
            cfg.n_list = {1, 3, 6, 9};
            cfg.t_grid = parse_grid("0:50:201");
            break;
        case Experiment::bound_spectrum:
            cfg.params.theta = 0.5;
            cfg.gamma0_grid = parse_grid("0.01:1:100");
            cfg.n_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
            break;
        case Experiment::negativity_map:
            cfg.gamma0_grid = parse_grid("0:1:21");
            cfg.theta_grid = parse_grid("0:1:21");
            cfg.n_list = {1, 3, 6, 9};
            cfg.eval_time = 10.0;
            break;
        case Experiment::validate:
            cfg.params.theta = 0.5;
            break;
    }
    return cfg;
}

}  // namespace vqdyn
