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

#include "brachsim/continuous_policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brachsim/dynamics.hpp"
#include "brachsim/errors.hpp"

namespace brachsim {

void ControllerConfig::validate() const {
    if (!(std::isfinite(zeta) && zeta > 0.0)) {
        throw ConfigError("controller.zeta must be strictly positive");
    }
    if (!(std::isfinite(omega) && omega > 0.0)) {
        throw ConfigError("controller.omega must be strictly positive");
    }
}

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double setpoint(double theta, double dtheta, double prev, const ControllerConfig& cfg) {
    const double s = sign_of(std::sin(theta)) * sign_of(dtheta);
    if (s == 0.0) {
        return cfg.tie_break == TieBreak::HoldPrevious ? prev : std::numbers::pi;
    }
    return 0.5 * std::numbers::pi * (1.0 + s);
}

double control_signal(double gamma, double dgamma, double gamma_d, const ControllerConfig& cfg) {
    return -cfg.omega * cfg.omega * (gamma - gamma_d) - 2.0 * cfg.zeta * cfg.omega * dgamma;
}

double control_input(const State& state, double w, const RobotParams& params,
                     const ControllerConfig& cfg) {
    const DynTerms t = dyn_terms(state, params);
    double u = t.M.crank * w - t.d.crank + t.c.crank - t.tau_p.crank;
    if (cfg.saturate) {
        u = std::clamp(u, -params.u_max, params.u_max);
    }
    return u;
}

double max_frequency(double u_max, double I_S) {
    if (!(u_max > 0.0 && I_S > 0.0)) {
        throw ConfigError("max_frequency requires positive torque and inertia");
    }
    return std::sqrt(u_max / (I_S * std::numbers::pi));
}

}  // namespace brachsim
