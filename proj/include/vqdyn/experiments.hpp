#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vqdyn/boundstate.hpp"
#include "vqdyn/channel.hpp"
#include "vqdyn/config.hpp"
#include "vqdyn/negativity.hpp"
#include "vqdyn/propagator.hpp"
#include "vqdyn/table.hpp"

namespace vqdyn {

/// Maximally entangled two-qutrit projector (|00> + |11> + |22>)/sqrt(3),
/// with the computational labels identified with the atomic basis
/// |0> = |A>, |1> = |B>, |2> = |C>.
inline Mat9 entangled_pair_state() {
    std::array<cdouble, 9> v{};
    const double amp = 1.0 / std::sqrt(3.0);
    for (std::size_t k = 0; k < 3; ++k) v[3 * k + k] = amp;
    return outer(v);
}

/// The full observable pipeline at one parameter point: propagators -> Kraus
/// channel -> two-qutrit evolution of the entangled pair -> negativity.
inline double negativity_at(const SystemParams& p, double t) {
    const auto pair = atom_propagators(p, t);
    const auto ks = kraus_set(pair.g1, pair.g2);
    return negativity(apply_two(entangled_pair_state(), ks));
}

namespace detail {

/// Same pipeline, with failures labeled by the grid point that caused them.
inline double negativity_at_point(const SystemParams& p, double t) {
    const auto label = [&]() {
        std::ostringstream os;
        os << " at grid point (gamma0=" << p.gamma0 << ", theta=" << p.theta
           << ", N=" << p.n_atoms << ", t=" << t << ")";
        return os.str();
    };
    try {
        return negativity_at(p, t);
    } catch (const numerical_error& e) {
        throw numerical_error(e.what() + label());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(e.what() + label());
    }
}

}  // namespace detail

/// Index-sharded worker pool; slot i of the output belongs to task i, so the
/// emitted order never depends on scheduling. The first exception thrown by
/// any task is rethrown on the calling thread after all workers join.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(threads)));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::mutex error_mutex;
    std::exception_ptr first_error;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = static_cast<std::size_t>(w); i < count;
                     i += static_cast<std::size_t>(workers))
                    fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline nlohmann::json config_echo(const RunConfig& cfg) {
    nlohmann::json j;
    j["experiment"] = experiment_name(cfg.experiment);
    j["gamma0"] = cfg.params.gamma0;
    j["lambda"] = cfg.params.lambda;
    j["omega0"] = cfg.params.omega0;
    j["theta"] = cfg.params.theta;
    j["n_atoms"] = cfg.params.n_atoms;
    if (!cfg.gamma0_grid.empty()) j["gamma0_grid"] = cfg.gamma0_grid;
    if (!cfg.theta_grid.empty()) j["theta_grid"] = cfg.theta_grid;
    if (!cfg.t_grid.empty()) j["t_grid"] = cfg.t_grid;
    if (!cfg.n_list.empty()) j["n_list"] = cfg.n_list;
    if (cfg.experiment == Experiment::negativity_map) j["t"] = cfg.eval_time;
    if (cfg.experiment == Experiment::validate) {
        j["modes"] = cfg.oracle.modes;
        j["bandwidth"] = cfg.oracle.resolved_bandwidth(cfg.params);
        j["dt"] = cfg.oracle.resolved_dt(cfg.params);
        j["cutoff_at_zero"] = cfg.oracle.cutoff_at_zero;
    }
    return j;
}

/// Negativity of the evolved entangled pair over (N, theta, t) grids at fixed
/// gamma0 and lambda; one row per point, n_list outermost then theta then t.
inline Table run_negativity_dynamics(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.theta_grid.empty()) c.theta_grid = {c.params.theta};
    if (c.n_list.empty()) c.n_list = {c.params.n_atoms};
    if (c.t_grid.empty()) throw std::invalid_argument("negativity-dynamics: empty time grid");
    c.validate();

    const std::size_t total = c.n_list.size() * c.theta_grid.size() * c.t_grid.size();
    std::vector<double> values(total);
    parallel_for(total, c.threads, [&](std::size_t i) {
        const std::size_t it = i % c.t_grid.size();
        const std::size_t ith = (i / c.t_grid.size()) % c.theta_grid.size();
        const std::size_t in = i / (c.t_grid.size() * c.theta_grid.size());
        SystemParams p = c.params;
        p.n_atoms = c.n_list[in];
        p.theta = c.theta_grid[ith];
        values[i] = detail::negativity_at_point(p, c.t_grid[it]);
    });

    Table t;
    t.columns = {"t", "n_atoms", "theta", "negativity"};
    t.rows.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t it = i % c.t_grid.size();
        const std::size_t ith = (i / c.t_grid.size()) % c.theta_grid.size();
        const std::size_t in = i / (c.t_grid.size() * c.theta_grid.size());
        t.rows.push_back({Cell{c.t_grid[it]}, Cell{static_cast<std::int64_t>(c.n_list[in])},
                          Cell{c.theta_grid[ith]}, Cell{values[i]}});
    }
    return t;
}

/// Bound-state energies over the (N, gamma0) grid at fixed theta and lambda.
/// Rows that fail to converge carry converged = 0 and the solver message.
inline Table run_bound_spectrum(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.gamma0_grid.empty()) c.gamma0_grid = {c.params.gamma0};
    if (c.n_list.empty()) c.n_list = {c.params.n_atoms};
    c.validate();

    const auto rows = spectrum_scan(c.params, c.gamma0_grid, c.n_list);
    Table t;
    t.columns = {"gamma0", "n_atoms", "energy", "residual", "iterations", "converged", "message"};
    t.rows.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.converged)
            t.rows.push_back({Cell{r.gamma0}, Cell{static_cast<std::int64_t>(r.n_atoms)},
                              Cell{r.result.energy}, Cell{r.result.residual},
                              Cell{static_cast<std::int64_t>(r.result.iterations)},
                              Cell{std::int64_t{1}}, Cell{std::string{}}});
        else
            t.rows.push_back({Cell{r.gamma0}, Cell{static_cast<std::int64_t>(r.n_atoms)},
                              Cell{std::string{"nan"}}, Cell{std::string{"nan"}},
                              Cell{std::int64_t{0}}, Cell{std::int64_t{0}}, Cell{r.message}});
    }
    return t;
}

/// Negativity at the fixed evaluation time over the (N, gamma0, theta) grid.
inline Table run_negativity_map(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.gamma0_grid.empty()) c.gamma0_grid = {c.params.gamma0};
    if (c.theta_grid.empty()) c.theta_grid = {c.params.theta};
    if (c.n_list.empty()) c.n_list = {c.params.n_atoms};
    c.validate();

    const std::size_t total = c.n_list.size() * c.gamma0_grid.size() * c.theta_grid.size();
    std::vector<double> values(total);
    parallel_for(total, c.threads, [&](std::size_t i) {
        const std::size_t ith = i % c.theta_grid.size();
        const std::size_t ig = (i / c.theta_grid.size()) % c.gamma0_grid.size();
        const std::size_t in = i / (c.theta_grid.size() * c.gamma0_grid.size());
        SystemParams p = c.params;
        p.n_atoms = c.n_list[in];
        p.gamma0 = c.gamma0_grid[ig];
        p.theta = c.theta_grid[ith];
        values[i] = detail::negativity_at_point(p, c.eval_time);
    });

    Table t;
    t.columns = {"gamma0", "theta", "n_atoms", "negativity"};
    t.rows.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t ith = i % c.theta_grid.size();
        const std::size_t ig = (i / c.theta_grid.size()) % c.gamma0_grid.size();
        const std::size_t in = i / (c.theta_grid.size() * c.gamma0_grid.size());
        t.rows.push_back({Cell{c.gamma0_grid[ig]}, Cell{c.theta_grid[ith]},
                          Cell{static_cast<std::int64_t>(c.n_list[in])}, Cell{values[i]}});
    }
    return t;
}

}  // namespace vqdyn
