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

#include "brachsim/energy.hpp"

#include <cmath>

#include "brachsim/errors.hpp"
#include "brachsim/kinematics.hpp"

namespace brachsim {

EnergyBreakdown energy(const State& x, const RobotParams& p) {
    const SliderKinematics k = slider_derivatives(x.gamma, p);
    const double r_dot = k.dr * x.dgamma;
    const double cos_th = std::cos(x.theta);

    EnergyBreakdown e;
    e.T_radial = 0.5 * p.m_M * r_dot * r_dot;
    e.T = 0.5 * (p.m_R * p.r_R * p.r_R + p.I_R + p.m_M * k.r * k.r) * x.dtheta * x.dtheta +
          e.T_radial + 0.5 * p.I_S * x.dgamma * x.dgamma;
    const double r0 = slider_position(0.0, p);
    e.V = p.m_R * p.g * (p.r_R - p.r_R * cos_th) + p.m_M * p.g * (r0 - k.r * cos_th);
    e.E = e.T + e.V;
    return e;
}

double actuator_power(double dgamma, double u) {
    const double p = dgamma * u;
    return p > 0.0 ? p : 0.0;
}

JumpEnergyDelta jump_energy_delta(const State& before, double gamma_plus, const RobotParams& p) {
    const double r_before = slider_position(before.gamma, p);
    const double r_after = slider_position(gamma_plus, p);
    const double rod_const = p.I_R + p.m_R * p.r_R * p.r_R;
    const double M_before = rod_const + p.m_M * r_before * r_before;
    const double M_after = rod_const + p.m_M * r_after * r_after;

    JumpEnergyDelta d;
    d.dT = 0.5 * M_before * (M_before / M_after - 1.0) * before.dtheta * before.dtheta;
    d.dV = -p.m_M * p.g * (r_after - r_before) * std::cos(before.theta);
    return d;
}

double accumulate_work(std::span<const double> t, std::span<const double> power) {
    if (t.size() != power.size()) {
        throw ConfigError("accumulate_work: time and power sample counts differ");
    }
    double W = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double dt = t[i] - t[i - 1];
        if (!(dt > 0.0)) {
            throw ConfigError("accumulate_work: time stamps must be strictly increasing");
        }
        W += 0.5 * (power[i] + power[i - 1]) * dt;
    }
    return W;
}

}  // namespace brachsim
