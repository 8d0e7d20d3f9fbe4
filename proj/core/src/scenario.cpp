/*
 Copyright 2025 The brachsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "brachsim/scenario.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <thread>

#include "brachsim/errors.hpp"

namespace brachsim {

void ScenarioConfig::validate() const {
    params.validate(true);
    controller.validate();
    integrator.validate();
    if (!x0.finite()) {
        throw ConfigError("x0 entries must be finite");
    }
    if (!(std::isfinite(stop.theta_limit) && stop.theta_limit > 0.0)) {
        throw ConfigError("stop.theta_limit must be strictly positive");
    }
    if (!(std::isfinite(stop.t_max) && stop.t_max > 0.0)) {
        throw ConfigError("stop.t_max must be strictly positive");
    }
    if (!(std::isfinite(output.sample_period) && output.sample_period > 0.0)) {
        throw ConfigError("output.sample_period must be strictly positive");
    }
}

Trajectory sample_trajectory(const RunResult& run, const RobotParams& params,
                             const ControllerConfig& ctrl, double sample_period) {
    const DenseTrajectory& flow = run.flow;
    Trajectory out;
    if (flow.segments.empty()) {
        return out;
    }

    auto input_at = [&](double t, const State& x) -> std::pair<double, double> {
        switch (flow.policy) {
            case Policy::LimitCase:
                return {holding_input(x, params), std::numeric_limits<double>::quiet_NaN()};
            case Policy::Continuous: {
                const double gd = flow.setpoint_at(t);
                const double w = control_signal(x.gamma, x.dgamma, gd, ctrl);
                return {control_input(x, w, params, ctrl), gd};
            }
            case Policy::OpenLoop:
            default:
                return {0.0, std::numeric_limits<double>::quiet_NaN()};
        }
    };

    auto emit = [&](double t, const State& x) {
        TrajectorySample s;
        s.t = t;
        s.state = x;
        const auto [u, gd] = input_at(t, x);
        s.u = u;
        s.gamma_d = gd;
        s.energy = energy(x, params);
        s.W_cum = flow.work_at(t);
        s.phase = flow.phase_at(t);
        out.push_back(s);
    };

    std::size_t seg = 0;
    const double span = flow.t_end - flow.t0;
    const auto samples = static_cast<std::size_t>(std::floor(span / sample_period + 1e-9)) + 1;
    double t_last = flow.t0 - 1.0;
    for (std::size_t n = 0; n < samples; ++n) {
        const double t = flow.t0 + static_cast<double>(n) * sample_period;
        while (seg + 1 < flow.segments.size() && flow.segments[seg].t_end() < t) {
            ++seg;
        }
        const DenseSegment& s = flow.segments[seg];
        const double tq = std::min(t, s.t_end());  // guards the last-grid-point roundoff
        emit(tq, s.eval(tq));
        t_last = tq;
    }
    if (flow.t_end > t_last + 1e-12) {
        emit(flow.t_end, flow.x_end);
    }
    return out;
}

ScenarioResult run(const ScenarioConfig& config) {
    config.validate();

    RunResult result;
    switch (config.policy) {
        case Policy::LimitCase:
            result = run_limit_case(config.x0, config.params, config.integrator, config.stop);
            break;
        case Policy::Continuous:
            result = run_continuous(config.x0, config.params, config.controller,
                                    config.integrator, config.stop);
            break;
        case Policy::OpenLoop:
            result = run_open_loop(config.x0, config.params, config.integrator, config.stop);
            break;
    }

    ScenarioResult out;
    out.trajectory =
        sample_trajectory(result, config.params, config.controller, config.output.sample_period);
    out.jumps = std::move(result.jumps);
    out.summary = result.summary;
    return out;
}

void apply_numeric_override(ScenarioConfig& config, const std::string& key, double value) {
    const std::map<std::string, double*> fields = {
        {"params.m_R", &config.params.m_R},
        {"params.I_R", &config.params.I_R},
        {"params.r_R", &config.params.r_R},
        {"params.m_M", &config.params.m_M},
        {"params.I_S", &config.params.I_S},
        {"params.rho", &config.params.rho},
        {"params.l", &config.params.l},
        {"params.d", &config.params.d},
        {"params.b_R", &config.params.b_R},
        {"params.b_C", &config.params.b_C},
        {"params.b_S", &config.params.b_S},
        {"params.u_max", &config.params.u_max},
        {"params.g", &config.params.g},
        {"controller.zeta", &config.controller.zeta},
        {"controller.omega", &config.controller.omega},
        {"integrator.abs_tol", &config.integrator.abs_tol},
        {"integrator.rel_tol", &config.integrator.rel_tol},
        {"integrator.max_step", &config.integrator.max_step},
        {"integrator.event_tol", &config.integrator.event_tol},
        {"integrator.refractory", &config.integrator.refractory},
        {"stop.theta_limit", &config.stop.theta_limit},
        {"stop.t_max", &config.stop.t_max},
        {"output.sample_period", &config.output.sample_period},
        {"x0.theta", &config.x0.theta},
        {"x0.gamma", &config.x0.gamma},
        {"x0.dtheta", &config.x0.dtheta},
        {"x0.dgamma", &config.x0.dgamma},
    };
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw ConfigError("sweep: unknown numeric field \"" + key + "\"");
    }
    *it->second = value;
}

std::vector<SweepEntry> sweep(const ScenarioConfig& base, const std::vector<SweepAxis>& grid,
                              bool parallel) {
    if (grid.empty()) {
        throw ConfigError("sweep: the parameter grid is empty");
    }
    for (const SweepAxis& axis : grid) {
        if (axis.values.empty()) {
            throw ConfigError("sweep: axis \"" + axis.key + "\" has no values");
        }
    }

    // Cartesian product in grid order (last axis fastest).
    std::vector<std::vector<std::pair<std::string, double>>> points;
    std::vector<std::size_t> idx(grid.size(), 0);
    while (true) {
        std::vector<std::pair<std::string, double>> point;
        point.reserve(grid.size());
        for (std::size_t a = 0; a < grid.size(); ++a) {
            point.emplace_back(grid[a].key, grid[a].values[idx[a]]);
        }
        points.push_back(std::move(point));
        std::size_t a = grid.size();
        while (a > 0) {
            --a;
            if (++idx[a] < grid[a].values.size()) {
                break;
            }
            idx[a] = 0;
            if (a == 0) {
                goto product_done;
            }
        }
    }
product_done:

    auto run_point = [&base](const std::vector<std::pair<std::string, double>>& overrides) {
        SweepEntry entry;
        entry.overrides = overrides;
        try {
            ScenarioConfig cfg = base;
            for (const auto& [key, value] : overrides) {
                apply_numeric_override(cfg, key, value);
            }
            cfg.validate();
            entry.summary = run(cfg).summary;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        return entry;
    };

    std::vector<SweepEntry> entries(points.size());
    if (!parallel || points.size() < 2) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            entries[i] = run_point(points[i]);
        }
        return entries;
    }

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                       points.size()));
    std::vector<std::future<void>> futures;
    std::atomic<std::size_t> next{0};
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
                entries[i] = run_point(points[i]);
            }
        }));
    }
    for (auto& f : futures) {
        f.get();
    }
    return entries;
}

}  // namespace brachsim
