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

#include "brachsim/selfcheck.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "brachsim/continuous_policy.hpp"
#include "brachsim/dynamics.hpp"
#include "brachsim/energy.hpp"
#include "brachsim/errors.hpp"
#include "brachsim/hybrid_policy.hpp"
#include "brachsim/integrator.hpp"
#include "brachsim/kinematics.hpp"

namespace brachsim::checks {

namespace {

double rel_err(double got, double want) {
    const double scale = std::max({std::fabs(got), std::fabs(want), 1e-9});
    return std::fabs(got - want) / scale;
}

std::string format_worst(double worst, double tol) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "worst relative error " << worst << " (tolerance " << tol << ")";
    return os.str();
}

std::vector<State> random_states(std::size_t count) {
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> om_rod(-8.0, 8.0);
    std::uniform_real_distribution<double> om_crank(-30.0, 30.0);
    std::vector<State> states(count);
    for (State& s : states) {
        s = {ang(rng), ang(rng), om_rod(rng), om_crank(rng)};
    }
    return states;
}

double kinetic(const State& x, const RobotParams& p) { return energy(x, p).T; }
double potential(const State& x, const RobotParams& p) { return energy(x, p).V; }

}  // namespace

CheckResult gradient_suite(const RobotParams& base) {
    constexpr double tol = 1e-6;
    constexpr double h = 1e-6;
    double worst = 0.0;
    for (SliderOffsetMode mode :
         {SliderOffsetMode::Discard, SliderOffsetMode::Plus, SliderOffsetMode::Minus}) {
        RobotParams p = base;
        p.e_mode = mode;
        for (int i = 0; i <= 400; ++i) {
            const double gamma = -2.0 * std::numbers::pi + i * (4.0 * std::numbers::pi / 400.0);
            const SliderKinematics k = slider_derivatives(gamma, p);
            const double fd_dr =
                (slider_position(gamma + h, p) - slider_position(gamma - h, p)) / (2.0 * h);
            const double fd_ddr = (slider_position(gamma + h, p) - 2.0 * slider_position(gamma, p) +
                                   slider_position(gamma - h, p)) /
                                  (h * h);
            worst = std::max(worst, rel_err(k.dr, fd_dr));
            worst = std::max(worst, rel_err(k.ddr, fd_ddr));
        }
    }
    return {"gradient", worst <= tol, format_worst(worst, tol)};
}

CheckResult lagrangian_suite(const RobotParams& p) {
    constexpr double tol = 1e-5;
    constexpr double hv = 1e-4;  // T is quadratic in v: second differences are exact
    constexpr double hq = 1e-5;
    double worst = 0.0;

    for (const State& x : random_states(100)) {
        // Mass matrix as the Hessian of T in the velocities.
        auto T_at = [&](double dth, double dg) {
            return kinetic({x.theta, x.gamma, dth, dg}, p);
        };
        const DynTerms terms = dyn_terms(x, p);
        const double m11 =
            (T_at(x.dtheta + hv, x.dgamma) - 2.0 * T_at(x.dtheta, x.dgamma) +
             T_at(x.dtheta - hv, x.dgamma)) /
            (hv * hv);
        const double m22 =
            (T_at(x.dtheta, x.dgamma + hv) - 2.0 * T_at(x.dtheta, x.dgamma) +
             T_at(x.dtheta, x.dgamma - hv)) /
            (hv * hv);
        const double m12 = (T_at(x.dtheta + hv, x.dgamma + hv) - T_at(x.dtheta + hv, x.dgamma - hv) -
                            T_at(x.dtheta - hv, x.dgamma + hv) +
                            T_at(x.dtheta - hv, x.dgamma - hv)) /
                           (4.0 * hv * hv);
        worst = std::max(worst, rel_err(terms.M.rod, m11));
        worst = std::max(worst, rel_err(terms.M.crank, m22));
        worst = std::max(worst, std::fabs(m12) / std::max(terms.M.rod, 1.0));

        // c = (d2T/dv dq) v - dT/dq by finite differences.
        auto T_state = [&](const State& s) { return kinetic(s, p); };
        for (int i = 0; i < 2; ++i) {
            auto bump_q = [&](const State& s, double dq) {
                State b = s;
                (i == 0 ? b.theta : b.gamma) += dq;
                return b;
            };
            double mixed_v = 0.0;
            {
                // d/dq_i (dT/dv_j) v_j summed over j
                for (int j = 0; j < 2; ++j) {
                    auto bump_v = [&](const State& s, double dv) {
                        State b = s;
                        (j == 0 ? b.dtheta : b.dgamma) += dv;
                        return b;
                    };
                    const double plus =
                        (T_state(bump_v(bump_q(x, hq), hv)) - T_state(bump_v(bump_q(x, hq), -hv)));
                    const double minus = (T_state(bump_v(bump_q(x, -hq), hv)) -
                                          T_state(bump_v(bump_q(x, -hq), -hv)));
                    const double d2T = (plus - minus) / (4.0 * hq * hv);
                    mixed_v += d2T * (j == 0 ? x.dtheta : x.dgamma);
                }
            }
            const double dT_dq =
                (T_state(bump_q(x, hq)) - T_state(bump_q(x, -hq))) / (2.0 * hq);
            const double c_fd = mixed_v - dT_dq;
            const double c_an = i == 0 ? terms.c.rod : terms.c.crank;
            worst = std::max(worst, rel_err(c_an, c_fd));
        }

        // tau_p = -dV/dq by finite differences.
        const double hp = 1e-6;
        const double tau1 = -(potential({x.theta + hp, x.gamma, 0, 0}, p) -
                              potential({x.theta - hp, x.gamma, 0, 0}, p)) /
                            (2.0 * hp);
        const double tau2 = -(potential({x.theta, x.gamma + hp, 0, 0}, p) -
                              potential({x.theta, x.gamma - hp, 0, 0}, p)) /
                            (2.0 * hp);
        worst = std::max(worst, rel_err(terms.tau_p.rod, tau1));
        worst = std::max(worst, rel_err(terms.tau_p.crank, tau2));
    }
    return {"lagrangian", worst <= tol, format_worst(worst, tol)};
}

CheckResult conservation_suite(const RobotParams& params) {
    IntegratorConfig cfg;  // reference tolerances
    const State x0{0.31, 0.0, 1.46, 0.0};

    // Without damping and input the total energy must stay put.
    RobotParams frictionless = params;
    frictionless.b_R = frictionless.b_C = frictionless.b_S = 0.0;
    const double E0 = energy(x0, frictionless).E;
    double drift = 0.0;
    {
        const TorqueLaw none = [](double, const State&) { return 0.0; };
        const SegmentSink sink = [&](const DenseSegment& seg) {
            drift = std::max(drift,
                             std::fabs(energy(seg.y1, frictionless).E - E0) / std::fabs(E0));
        };
        integrate_until_event(x0, none, {}, 0.0, 10.0, cfg, frictionless, sink);
    }
    if (drift >= 1e-6) {
        return {"conservation", false, format_worst(drift, 1e-6)};
    }

    // With the supplied damping the energy must not increase along an
    // unforced trajectory.
    double worst_rise = 0.0;
    {
        double E_prev = energy(x0, params).E;
        const TorqueLaw none = [](double, const State&) { return 0.0; };
        const SegmentSink sink = [&](const DenseSegment& seg) {
            const double E_now = energy(seg.y1, params).E;
            worst_rise = std::max(worst_rise, E_now - E_prev);
            E_prev = E_now;
        };
        integrate_until_event(x0, none, {}, 0.0, 10.0, cfg, params, sink);
    }
    const bool ok = worst_rise <= 1e-9;
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "conservative drift " << drift << ", worst energy rise per step "
       << worst_rise << " J";
    return {"conservation", ok, os.str()};
}

CheckResult jump_momentum_suite(const RobotParams& params) {
    constexpr double tol = 1e-12;
    double worst = 0.0;
    for (const State& x : random_states(60)) {
        State pre = x;
        pre.dgamma = 0.0;
        for (JumpKind kind :
             {JumpKind::StableEq, JumpKind::TurningAngle, JumpKind::UnstableEq}) {
            const State post = jump_map(pre, kind, params);
            if (post.theta != pre.theta || post.dgamma != 0.0) {
                return {"jump-momentum", false, "jump map moved theta or left crank speed"};
            }
            const double p_before = generalized_momentum(pre, params).rod;
            const double p_after = generalized_momentum(post, params).rod;
            worst = std::max(worst, rel_err(p_after, p_before));

            const JumpEnergyDelta delta = jump_energy_delta(pre, post.gamma, params);
            const EnergyBreakdown ea = energy(pre, params);
            const EnergyBreakdown eb = energy(post, params);
            worst = std::max(worst, rel_err(delta.dT, eb.T - ea.T));
            worst = std::max(worst, rel_err(delta.dV, eb.V - ea.V));
        }
    }
    return {"jump-momentum", worst <= tol, format_worst(worst, tol)};
}

CheckResult linearization_suite(const RobotParams& params) {
    constexpr double tol = 1e-6;
    ControllerConfig ctrl;  // zeta = 1, omega = 17.14, no saturation
    IntegratorConfig cfg;
    StopCondition stop;
    stop.t_max = 3.0;
    stop.theta_limit = 9.0 * std::numbers::pi;

    const RunResult run = run_continuous({0.31, 0.0, 1.46, 0.0}, params, ctrl, cfg, stop);
    double worst = 0.0;
    for (const DenseSegment& seg : run.flow.segments) {
        for (double f : {0.25, 0.75}) {
            const double t = seg.t0 + f * (seg.t_hi - seg.t0);
            if (t <= seg.t0 || t >= seg.t_hi) {
                continue;
            }
            const State x = seg.eval(t);
            const double gd = run.flow.setpoint_at(t);
            const double w = control_signal(x.gamma, x.dgamma, gd, ctrl);
            const double u = control_input(x, w, params, ctrl);
            const State dx = state_derivative(x, u, params);
            const double residual = dx.dgamma - w;
            worst = std::max(worst, std::fabs(residual));
        }
    }
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "worst residual " << worst << " rad/s^2 (tolerance " << tol << ")";
    return {"linearization", worst <= tol, os.str()};
}

std::vector<CheckResult> run_all(const RobotParams& params) {
    return {gradient_suite(params), lagrangian_suite(params), conservation_suite(params),
            jump_momentum_suite(params), linearization_suite(params)};
}

}  // namespace brachsim::checks
