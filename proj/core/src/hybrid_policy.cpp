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

#include "brachsim/hybrid_policy.hpp"

#include <cmath>
#include <numbers>

#include "brachsim/dynamics.hpp"

namespace brachsim {

std::vector<EventSpec> jump_set_events(PhaseTag phase) {
    std::vector<EventSpec> events;
    // cos(theta) = 1  <=>  sin(theta/2) = 0. A sign change requires the rod
    // to be moving, which realizes the thetadot != 0 membership condition.
    events.push_back({"stable-eq",
                      [](double, const State& x) { return std::sin(0.5 * x.theta); },
                      CrossDirection::Any});
    if (phase == PhaseTag::Swing) {
        events.push_back({"turning-angle",
                          [](double, const State& x) { return x.dtheta; },
                          CrossDirection::Any});
    } else {
        // cos(theta) = -1  <=>  cos(theta/2) = 0.
        events.push_back({"unstable-eq",
                          [](double, const State& x) { return std::cos(0.5 * x.theta); },
                          CrossDirection::Any});
    }
    return events;
}

State jump_map(const State& x, JumpKind kind, const RobotParams& params) {
    const double gamma_plus = (kind == JumpKind::StableEq) ? std::numbers::pi : 0.0;
    const double rod_const = params.I_R + params.m_R * params.r_R * params.r_R;
    const double r_before = slider_position(x.gamma, params);
    const double r_after = slider_position(gamma_plus, params);
    const double M_before = rod_const + params.m_M * r_before * r_before;
    const double M_after = rod_const + params.m_M * r_after * r_after;

    State out;
    out.theta = x.theta;
    out.gamma = gamma_plus;
    out.dtheta = (M_before / M_after) * x.dtheta;
    out.dgamma = 0.0;
    return out;
}

double holding_input(const State& x, const RobotParams& params) {
    const DynTerms t = dyn_terms(x, params);
    return -t.d.crank + t.c.crank - t.tau_p.crank;
}

}  // namespace brachsim
