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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brachsim/continuous_policy.hpp"
#include "brachsim/hybrid_policy.hpp"
#include "brachsim/run_types.hpp"

namespace brachsim {

/// Output settings of a scenario.
struct OutputConfig {
    double sample_period = 1e-3;  ///< uniform trace sampling period [s]
    std::string path;             ///< trace destination ("" = caller decides)
    std::string jump_log_path;    ///< optional jump-log destination
};

/// Complete description of one run.
struct ScenarioConfig {
    RobotParams params;
    ControllerConfig controller;
    IntegratorConfig integrator;
    Policy policy = Policy::LimitCase;
    State x0;
    StopCondition stop;
    OutputConfig output;

    void validate() const;  ///< throws ConfigError naming the offending field
};

/// A run plus its uniformly sampled trajectory.
struct ScenarioResult {
    Trajectory trajectory;
    std::vector<JumpEvent> jumps;
    RunSummary summary;
};

/// Unforced reference run (u = 0) with the same staging, counting, and
/// termination bookkeeping as the controlled policies.
RunResult run_open_loop(const State& x0, const RobotParams& params, const IntegratorConfig& cfg,
                        const StopCondition& stop);

/// Dispatches to the configured policy, then samples the dense result at
/// the configured output period. The summary is computed from the dense
/// data, so it is independent of the sampling period.
ScenarioResult run(const ScenarioConfig& config);

/// Samples a dense run at a uniform period (plus the terminal instant when
/// it falls off the grid), reconstructing input, setpoint, energy,
/// cumulative work, and phase per sample.
Trajectory sample_trajectory(const RunResult& run, const RobotParams& params,
                             const ControllerConfig& ctrl, double sample_period);

/// One axis of a sweep grid: a numeric scenario field ("controller.omega",
/// "params.rho", ...) and the values it takes.
struct SweepAxis {
    std::string key;
    std::vector<double> values;
};

/// Outcome of one sweep point; failed points carry the error text instead
/// of aborting the sweep.
struct SweepEntry {
    std::vector<std::pair<std::string, double>> overrides;
    std::optional<RunSummary> summary;
    std::string error;
};

/// Runs the cartesian product of the axes over the base scenario. Points
/// are independent and deterministic; they may execute concurrently but the
/// returned order is always the grid order.
std::vector<SweepEntry> sweep(const ScenarioConfig& base, const std::vector<SweepAxis>& grid,
                              bool parallel = true);

/// Applies `value` to the numeric scenario field named by a "section.key"
/// path. Throws ConfigError for unknown paths.
void apply_numeric_override(ScenarioConfig& config, const std::string& key, double value);

}  // namespace brachsim
