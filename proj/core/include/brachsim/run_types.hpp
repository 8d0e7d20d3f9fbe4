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

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "brachsim/energy.hpp"
#include "brachsim/integrator.hpp"
#include "brachsim/state.hpp"

namespace brachsim {

/// Motion stage. A run starts in Swing (amplifying the oscillation) and
/// latches into Rotation once |theta| first crosses pi; it never switches
/// back.
enum class PhaseTag { Swing, Rotation };

/// Which control policy drives a run.
enum class Policy { LimitCase, Continuous, OpenLoop };

/// Termination condition: the run stops when |theta| reaches theta_limit or
/// the clock reaches t_max, whichever comes first.
struct StopCondition {
    double theta_limit = 9.0 * std::numbers::pi;
    double t_max = 60.0;
};

/// Uniformly sampled trajectory point.
struct TrajectorySample {
    double t = 0.0;
    State state;
    double u = 0.0;        ///< applied crank torque [N m]
    double gamma_d = std::numeric_limits<double>::quiet_NaN();  ///< crank setpoint (continuous policy)
    EnergyBreakdown energy;
    double W_cum = 0.0;    ///< injected actuator work so far [J]
    PhaseTag phase = PhaseTag::Swing;
};

using Trajectory = std::vector<TrajectorySample>;

/// Discrete transition kind of the limit-case policy.
enum class JumpKind {
    StableEq,      ///< rod passing the stable equilibrium (cos theta = 1)
    TurningAngle,  ///< swing extremum (thetadot = 0)
    UnstableEq,    ///< rod passing the unstable equilibrium (cos theta = -1)
};

/// Record of one instantaneous repositioning jump.
struct JumpEvent {
    double t = 0.0;
    JumpKind kind = JumpKind::StableEq;
    State before, after;
    double dT = 0.0;  ///< kinetic energy change [J]
    double dV = 0.0;  ///< potential energy change [J]
};

/// Headline quantities of a completed run.
struct RunSummary {
    double t_pi_cross = std::numeric_limits<double>::quiet_NaN();  ///< first |theta| = pi [s]
    double swing_periods = 0.0;  ///< completed swing periods, half-period resolution
    double t_terminal = 0.0;     ///< run end time [s]
    double theta_terminal = 0.0; ///< rod angle at the end [rad]
    double dE = 0.0;             ///< total energy gained, E(end) - E(start) [J]
    double W = 0.0;              ///< injected actuator work [J]
    double efficiency = std::numeric_limits<double>::quiet_NaN();  ///< dE / W when W > 0
    int jump_count = 0;             ///< limit-case jumps
    int setpoint_switch_count = 0;  ///< continuous-policy setpoint changes
};

/// Dense record of a full run: every accepted integration segment plus the
/// timelines needed to reconstruct inputs and injected work at any time.
/// Uniform sampling at any output period is derived from this, so summaries
/// never depend on the sampling grid.
struct DenseTrajectory {
    Policy policy = Policy::OpenLoop;
    double t0 = 0.0;
    double t_end = 0.0;
    State x0, x_end;
    std::vector<DenseSegment> segments;
    /// (time, setpoint) steps of the continuous policy, first entry at t0.
    std::vector<std::pair<double, double>> setpoint_steps;
    /// Piecewise-linear nodes of cumulative injected work W(t).
    std::vector<std::pair<double, double>> work_nodes;
    double t_phase_switch = std::numeric_limits<double>::quiet_NaN();

    PhaseTag phase_at(double t) const {
        return (std::isnan(t_phase_switch) || t < t_phase_switch) ? PhaseTag::Swing
                                                                  : PhaseTag::Rotation;
    }
    /// Active setpoint at time t (continuous policy only).
    double setpoint_at(double t) const;
    /// Injected work up to time t, interpolated between accumulation nodes.
    double work_at(double t) const;
};

/// Everything produced by one run.
struct RunResult {
    DenseTrajectory flow;
    std::vector<JumpEvent> jumps;
    RunSummary summary;
};

}  // namespace brachsim
