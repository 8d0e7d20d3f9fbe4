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

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "brachsim/params.hpp"
#include "brachsim/state.hpp"

namespace brachsim {

/// Tolerances and event handling knobs of the adaptive integrator.
struct IntegratorConfig {
    double abs_tol = 1e-7;     ///< absolute error tolerance per component
    double rel_tol = 1e-5;     ///< relative error tolerance per component
    double max_step = 1e-2;    ///< step-size ceiling [s]
    double event_tol = 1e-9;   ///< time localization tolerance for roots [s]
    double refractory = 1e-3;  ///< re-arming delay for a fired event class [s]

    void validate() const;  ///< throws ConfigError on non-positive entries
};

/// Crossing-direction filter for event functions.
enum class CrossDirection { Rising, Falling, Any };

/// A scalar event function monitored during integration. A crossing of zero
/// (matching the direction filter) ends the flow. Events whose function is
/// exactly zero at the start of integration fire immediately when already
/// armed; otherwise they are armed `refractory` seconds in, which keeps an
/// event from re-firing off the manifold its own jump placed the state on.
struct EventSpec {
    std::string id;
    std::function<double(double, const State&)> func;
    CrossDirection direction = CrossDirection::Any;
    /// Absolute time before which this event may not fire. Callers advance
    /// it across hybrid jumps to implement the per-class refractory window.
    double t_min_fire = -std::numeric_limits<double>::infinity();
};

/// One accepted integration step with its continuous extension. The
/// interpolant is a quartic in the normalized step coordinate and matches
/// the integration order of the step itself. The span [t0, t_hi] may be
/// shorter than the underlying step when an event truncated it.
struct DenseSegment {
    double t0 = 0.0;    ///< step start time [s]
    double h = 0.0;     ///< full step size the interpolant was built for [s]
    double t_hi = 0.0;  ///< end of validity (event time or step end) [s]
    State y0, y1;       ///< states at t0 and t0 + h
    std::array<State, 5> rc{};  ///< interpolant coefficients

    double t_begin() const { return t0; }
    double t_end() const { return t_hi; }

    /// Interpolated state; exact at the step endpoints. Throws
    /// std::out_of_range for t outside [t0, t_hi] beyond a small slack.
    State eval(double t) const;
};

/// Outcome of a flow segment: either the earliest event crossing, localized
/// in time to within event_tol, or the state at t_max (event_index empty).
struct FlowOutcome {
    double t = 0.0;
    State x;
    std::optional<std::size_t> event_index;  ///< index into the events span
    CrossDirection crossed = CrossDirection::Any;  ///< realized direction when fired
};

/// Right-hand side of a generic 4-component ODE.
using RhsFn = std::function<State(double, const State&)>;
/// Feedback torque law u(t, x) for the crank input.
using TorqueLaw = std::function<double(double, const State&)>;
/// Sink invoked once per accepted (possibly event-truncated) step.
using SegmentSink = std::function<void(const DenseSegment&)>;

/// Integrates an arbitrary right-hand side with an embedded 5(4)
/// Runge-Kutta pair, scanning the supplied events on every accepted step.
/// Throws IntegrationError on step-size underflow or non-finite states.
FlowOutcome integrate_rhs_until_event(const RhsFn& rhs, const State& x0, double t0, double t_max,
                                      std::span<const EventSpec> events,
                                      const IntegratorConfig& cfg,
                                      const SegmentSink& on_segment = {});

/// Same engine bound to the robot dynamics: the right-hand side is
/// state_derivative with the torque supplied by u_law.
FlowOutcome integrate_until_event(const State& x0, const TorqueLaw& u_law,
                                  std::span<const EventSpec> events, double t0, double t_max,
                                  const IntegratorConfig& cfg, const RobotParams& params,
                                  const SegmentSink& on_segment = {});

}  // namespace brachsim
