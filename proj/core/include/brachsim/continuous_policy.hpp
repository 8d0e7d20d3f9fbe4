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

#include "brachsim/integrator.hpp"
#include "brachsim/params.hpp"
#include "brachsim/run_types.hpp"
#include "brachsim/state.hpp"

namespace brachsim {

/// Setpoint behavior when sign(sin theta) * sign(thetadot) is zero.
enum class TieBreak { HoldPrevious, ForceRetract };

/// Tuning of the torque-limited continuous controller. The crank tracks a
/// bang-bang setpoint through exact feedback linearization to critically
/// tunable second-order dynamics with natural frequency omega and damping
/// ratio zeta.
struct ControllerConfig {
    double zeta = 1.0;    ///< damping ratio [-]
    double omega = 17.14; ///< natural frequency [1/s]
    bool saturate = false;  ///< clamp the commanded torque to +/- u_max
    TieBreak tie_break = TieBreak::HoldPrevious;

    void validate() const;  ///< throws ConfigError on non-positive gains
};

/// Bang-bang crank setpoint driven purely by the body motion:
///
///   gamma_d = pi/2 (1 + sign(sin theta) sign(thetadot))
///
/// which retracts the mass (gamma_d = pi) while the rod moves away from the
/// stable equilibrium and extends it (gamma_d = 0) while it returns. When
/// either sign is zero the tie-break rule applies; HoldPrevious returns
/// prev, ForceRetract returns pi.
double setpoint(double theta, double dtheta, double prev, const ControllerConfig& cfg);

/// Target acceleration of the linearized crank dynamics:
///
///   w = -omega^2 (gamma - gamma_d) - 2 zeta omega gammadot
double control_signal(double gamma, double dgamma, double gamma_d, const ControllerConfig& cfg);

/// Feedback-linearizing torque
///
///   u = M_crank(gamma) w - d_crank + c_crank - tau_p_crank
///
/// which turns the crank dynamics into gammadd = w exactly. With
/// cfg.saturate the result is clamped to [-u_max, u_max].
double control_input(const State& state, double w, const RobotParams& params,
                     const ControllerConfig& cfg);

/// Largest natural frequency the motor torque supports. The peak demand
/// occurs when the setpoint flips by pi from rest, where |u| ~ I_S omega^2
/// pi, giving omega = sqrt(u_max / (I_S pi)).
double max_frequency(double u_max, double I_S);

/// Runs the continuous policy in closed loop. Setpoint switches (sign
/// changes of sin theta and thetadot) are localized as integration events
/// and the flow restarts across them, keeping the right-hand side smooth
/// within every step. Phase staging and termination match run_limit_case.
RunResult run_continuous(const State& x0, const RobotParams& params, const ControllerConfig& ctrl,
                         const IntegratorConfig& cfg, const StopCondition& stop);

}  // namespace brachsim
