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

// Event-driven execution of the three policies. Each run alternates flow
// segments with discrete handling (jumps, setpoint switches, phase latch)
// and accumulates injected work on a fixed 1 ms grid so that summaries do
// not depend on the output sampling period.

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "brachsim/continuous_policy.hpp"
#include "brachsim/dynamics.hpp"
#include "brachsim/energy.hpp"
#include "brachsim/errors.hpp"
#include "brachsim/hybrid_policy.hpp"
#include "brachsim/scenario.hpp"

namespace brachsim {

namespace {

constexpr double kWorkGridStep = 1e-3;      // injected-work integration grid [s]
constexpr double kEquilibriumBand = 1e-6;   // degenerate turning-jump suppression [rad]
constexpr double kRestBand = 1e-9;          // uncontrollable-start detection

void require_controllable(const State& x0) {
    if (std::fabs(wrap_to_pi(x0.theta)) < kRestBand && std::fabs(x0.dtheta) < kRestBand) {
        throw NonControllableStart(
            "run: the rod rests at the stable equilibrium; the moving mass cannot start it");
    }
}

// Trapezoidal integral of positive actuator power, accumulated on the
// global kWorkGridStep grid plus every segment boundary.
class WorkAccumulator {
public:
    explicit WorkAccumulator(std::vector<std::pair<double, double>>& nodes) : nodes_(nodes) {}

    void advance(const DenseSegment& seg, const TorqueLaw& u_law) {
        double t_a = seg.t0;
        double p_a = power_at(t_a, seg.y0, u_law);
        if (nodes_.empty()) {
            nodes_.emplace_back(t_a, 0.0);
        }
        long long k = static_cast<long long>(std::floor(t_a / kWorkGridStep)) + 1;
        double tn = static_cast<double>(k) * kWorkGridStep;
        while (tn < seg.t_hi) {
            if (tn > t_a) {
                step_to(tn, seg, u_law, t_a, p_a);
            }
            ++k;
            tn = static_cast<double>(k) * kWorkGridStep;
        }
        if (seg.t_hi > t_a) {
            step_to(seg.t_hi, seg, u_law, t_a, p_a);
        }
    }

    double total() const { return W_; }

private:
    void step_to(double t, const DenseSegment& seg, const TorqueLaw& u_law, double& t_a,
                 double& p_a) {
        const State x = seg.eval(t);
        const double p = power_at(t, x, u_law);
        W_ += 0.5 * (p_a + p) * (t - t_a);
        nodes_.emplace_back(t, W_);
        t_a = t;
        p_a = p;
    }

    static double power_at(double t, const State& x, const TorqueLaw& u_law) {
        return actuator_power(x.dgamma, u_law(t, x));
    }

    std::vector<std::pair<double, double>>& nodes_;
    double W_ = 0.0;
};

// Sign of sin(theta) just after theta crosses a multiple of pi, derived
// from the crossing direction instead of the (noise-level) value itself.
double post_sign_of_sin(double theta_at_event, double dtheta) {
    const double k = std::round(theta_at_event / std::numbers::pi);
    const bool odd = std::llround(k) % 2 != 0;
    const double s = dtheta > 0.0 ? 1.0 : (dtheta < 0.0 ? -1.0 : 0.0);
    return odd ? -s : s;
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void finish_summary(RunSummary& s, const DenseTrajectory& flow, const RobotParams& params,
                    int halves) {
    s.t_pi_cross = flow.t_phase_switch;
    s.swing_periods = 0.5 * halves;
    s.t_terminal = flow.t_end;
    s.theta_terminal = flow.x_end.theta;
    s.dE = energy(flow.x_end, params).E - energy(flow.x0, params).E;
    s.W = flow.work_nodes.empty() ? 0.0 : flow.work_nodes.back().second;
    s.efficiency =
        s.W > 1e-12 ? s.dE / s.W : std::numeric_limits<double>::quiet_NaN();
}

std::vector<EventSpec> stop_events(const StopCondition& stop) {
    const double lim = stop.theta_limit;
    return {
        {"stop-pos", [lim](double, const State& x) { return x.theta - lim; },
         CrossDirection::Rising},
        {"stop-neg", [lim](double, const State& x) { return x.theta + lim; },
         CrossDirection::Falling},
    };
}

EventSpec pi_watch_event() {
    // |theta| crossing pi from below; cos(theta/2) falls through zero there
    // for both signs of theta.
    return {"pi-cross", [](double, const State& x) { return std::cos(0.5 * x.theta); },
            CrossDirection::Falling};
}

void apply_arm_times(std::vector<EventSpec>& events, const std::map<std::string, double>& arm) {
    for (EventSpec& e : events) {
        if (auto it = arm.find(e.id); it != arm.end()) {
            e.t_min_fire = it->second;
        }
    }
}

}  // namespace

RunResult run_limit_case(const State& x0, const RobotParams& params, const IntegratorConfig& cfg,
                         const StopCondition& stop) {
    params.validate(false);
    cfg.validate();
    require_controllable(x0);

    RunResult out;
    DenseTrajectory& flow = out.flow;
    flow.policy = Policy::LimitCase;
    flow.t0 = 0.0;
    flow.x0 = x0;

    const TorqueLaw u_law = [&params](double, const State& x) {
        return holding_input(x, params);
    };
    WorkAccumulator work(flow.work_nodes);
    const SegmentSink sink = [&](const DenseSegment& seg) {
        work.advance(seg, u_law);
        flow.segments.push_back(seg);
    };

    PhaseTag phase = PhaseTag::Swing;
    std::map<std::string, double> arm;
    double t = 0.0;
    State x = x0;
    int halves = 0;

    while (true) {
        std::vector<EventSpec> events = stop_events(stop);
        for (EventSpec& e : jump_set_events(phase)) {
            events.push_back(std::move(e));
        }
        if (phase == PhaseTag::Swing) {
            EventSpec watch = pi_watch_event();
            watch.id = "unstable-eq";  // same manifold; handled as the D3 jump
            events.push_back(std::move(watch));
        }
        apply_arm_times(events, arm);

        const FlowOutcome res =
            integrate_until_event(x, u_law, events, t, stop.t_max, cfg, params, sink);
        t = res.t;
        x = res.x;
        if (!res.event_index) {
            break;  // time limit
        }
        const std::string id = events[*res.event_index].id;

        if (id == "stop-pos" || id == "stop-neg") {
            break;
        }
        arm[id] = t + cfg.refractory;

        JumpKind kind;
        if (id == "stable-eq") {
            kind = JumpKind::StableEq;
            if (phase == PhaseTag::Swing) {
                ++halves;
            }
        } else if (id == "turning-angle") {
            kind = JumpKind::TurningAngle;
            if (std::fabs(wrap_to_pi(x.theta)) < kEquilibriumBand) {
                continue;  // degenerate crossing at the stable equilibrium
            }
        } else {  // unstable-eq
            kind = JumpKind::UnstableEq;
            if (phase == PhaseTag::Swing) {
                phase = PhaseTag::Rotation;
                flow.t_phase_switch = t;
            }
        }

        JumpEvent jump;
        jump.t = t;
        jump.kind = kind;
        jump.before = x;
        jump.after = jump_map(x, kind, params);
        const JumpEnergyDelta delta = jump_energy_delta(x, jump.after.gamma, params);
        jump.dT = delta.dT;
        jump.dV = delta.dV;
        out.jumps.push_back(jump);
        x = jump.after;
    }

    flow.t_end = t;
    flow.x_end = x;
    finish_summary(out.summary, flow, params, halves);
    out.summary.jump_count = static_cast<int>(out.jumps.size());
    return out;
}

RunResult run_continuous(const State& x0, const RobotParams& params, const ControllerConfig& ctrl,
                         const IntegratorConfig& cfg, const StopCondition& stop) {
    params.validate(false);
    ctrl.validate();
    cfg.validate();
    require_controllable(x0);

    RunResult out;
    DenseTrajectory& flow = out.flow;
    flow.policy = Policy::Continuous;
    flow.t0 = 0.0;
    flow.x0 = x0;

    const double initial_prev = x0.gamma >= 0.5 * std::numbers::pi ? std::numbers::pi : 0.0;
    double gamma_d = setpoint(x0.theta, x0.dtheta, initial_prev, ctrl);
    flow.setpoint_steps.emplace_back(0.0, gamma_d);

    const TorqueLaw u_law = [&params, &ctrl, &gamma_d](double, const State& x) {
        const double w = control_signal(x.gamma, x.dgamma, gamma_d, ctrl);
        return control_input(x, w, params, ctrl);
    };
    WorkAccumulator work(flow.work_nodes);
    const SegmentSink sink = [&](const DenseSegment& seg) {
        work.advance(seg, u_law);
        flow.segments.push_back(seg);
    };

    PhaseTag phase = PhaseTag::Swing;
    std::map<std::string, double> arm;
    double t = 0.0;
    State x = x0;
    int halves = 0;
    int switches = 0;

    while (true) {
        std::vector<EventSpec> events = stop_events(stop);
        if (phase == PhaseTag::Swing) {
            events.push_back(pi_watch_event());
        }
        events.push_back({"setpoint-sin",
                          [](double, const State& s) { return std::sin(s.theta); },
                          CrossDirection::Any});
        events.push_back({"setpoint-dtheta",
                          [](double, const State& s) { return s.dtheta; },
                          CrossDirection::Any});
        apply_arm_times(events, arm);

        const FlowOutcome res =
            integrate_until_event(x, u_law, events, t, stop.t_max, cfg, params, sink);
        t = res.t;
        x = res.x;
        if (!res.event_index) {
            break;
        }
        const std::string id = events[*res.event_index].id;
        if (id == "stop-pos" || id == "stop-neg") {
            break;
        }
        arm[id] = t + cfg.refractory;

        double s_sin = sign_of(std::sin(x.theta));
        double s_dth = sign_of(x.dtheta);
        if (id == "pi-cross") {
            phase = PhaseTag::Rotation;
            flow.t_phase_switch = t;
            // The setpoint flips on the same manifold; derive the fresh
            // sign of sin(theta) from the crossing direction and keep the
            // sin event from re-firing on its residual.
            s_sin = post_sign_of_sin(x.theta, x.dtheta);
            arm["setpoint-sin"] = t + cfg.refractory;
        } else if (id == "setpoint-sin") {
            s_sin = post_sign_of_sin(x.theta, x.dtheta);
            if (phase == PhaseTag::Swing && std::cos(x.theta) < 0.0) {
                // Tie with the pi watcher resolved in favor of this event.
                phase = PhaseTag::Rotation;
                flow.t_phase_switch = t;
                arm["pi-cross"] = t + cfg.refractory;
            } else if (phase == PhaseTag::Swing) {
                ++halves;
            }
        } else {  // setpoint-dtheta
            s_dth = res.crossed == CrossDirection::Rising ? 1.0 : -1.0;
        }

        double gd_new = gamma_d;
        if (s_sin != 0.0 && s_dth != 0.0) {
            gd_new = 0.5 * std::numbers::pi * (1.0 + s_sin * s_dth);
        } else if (ctrl.tie_break == TieBreak::ForceRetract) {
            gd_new = std::numbers::pi;
        }
        if (gd_new != gamma_d) {
            gamma_d = gd_new;
            ++switches;
            flow.setpoint_steps.emplace_back(t, gamma_d);
        }
    }

    flow.t_end = t;
    flow.x_end = x;
    finish_summary(out.summary, flow, params, halves);
    out.summary.setpoint_switch_count = switches;
    return out;
}

RunResult run_open_loop(const State& x0, const RobotParams& params, const IntegratorConfig& cfg,
                        const StopCondition& stop) {
    params.validate(false);
    cfg.validate();

    RunResult out;
    DenseTrajectory& flow = out.flow;
    flow.policy = Policy::OpenLoop;
    flow.t0 = 0.0;
    flow.x0 = x0;

    const TorqueLaw u_law = [](double, const State&) { return 0.0; };
    WorkAccumulator work(flow.work_nodes);
    const SegmentSink sink = [&](const DenseSegment& seg) {
        work.advance(seg, u_law);
        flow.segments.push_back(seg);
    };

    PhaseTag phase = PhaseTag::Swing;
    std::map<std::string, double> arm;
    double t = 0.0;
    State x = x0;
    int halves = 0;

    while (true) {
        std::vector<EventSpec> events = stop_events(stop);
        if (phase == PhaseTag::Swing) {
            events.push_back(pi_watch_event());
        }
        events.push_back({"stable-cross",
                          [](double, const State& s) { return std::sin(s.theta); },
                          CrossDirection::Any});
        apply_arm_times(events, arm);

        const FlowOutcome res =
            integrate_until_event(x, u_law, events, t, stop.t_max, cfg, params, sink);
        t = res.t;
        x = res.x;
        if (!res.event_index) {
            break;
        }
        const std::string id = events[*res.event_index].id;
        if (id == "stop-pos" || id == "stop-neg") {
            break;
        }
        arm[id] = t + cfg.refractory;
        if (id == "pi-cross") {
            phase = PhaseTag::Rotation;
            flow.t_phase_switch = t;
            arm["stable-cross"] = t + cfg.refractory;
        } else if (phase == PhaseTag::Swing && std::cos(x.theta) > 0.0) {
            ++halves;
        }
    }

    flow.t_end = t;
    flow.x_end = x;
    finish_summary(out.summary, flow, params, halves);
    return out;
}

}  // namespace brachsim
