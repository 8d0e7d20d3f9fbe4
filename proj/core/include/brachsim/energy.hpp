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

#include <span>

#include "brachsim/params.hpp"
#include "brachsim/state.hpp"

namespace brachsim {

/// Mechanical energy of the system split into its parts.
struct EnergyBreakdown {
    double T = 0.0;         ///< kinetic energy [J]
    double T_radial = 0.0;  ///< m_M rdot_M^2 / 2 share of T [J]
    double V = 0.0;         ///< potential energy [J]
    double E = 0.0;         ///< total T + V [J]
};

/// Kinetic and potential energy at a state.
///
///   T = 1/2 (m_R r_R^2 + I_R + m_M r_M^2) thetadot^2
///     + 1/2 m_M rdot_M^2 + 1/2 I_S gammadot^2
///   V = m_R g (r_R - r_R cos theta) + m_M g (r_M(0) - r_M(gamma) cos theta)
///
/// The potential reference V = 0 sits at theta = 0 with the mass at its
/// gamma = 0 position. T_radial isolates the radial-motion share
/// 1/2 m_M (dr_M/dgamma gammadot)^2 so energy plots can exclude it.
EnergyBreakdown energy(const State& state, const RobotParams& params);

/// Mechanical power injected by the actuator. Only positive power counts;
/// braking power is not credited back:
///
///   P = gammadot u   if gammadot u > 0, else 0.
double actuator_power(double dgamma, double u);

/// Kinetic and potential energy change across one instantaneous
/// repositioning jump.
struct JumpEnergyDelta {
    double dT = 0.0;  ///< kinetic change [J]
    double dV = 0.0;  ///< potential change [J]
};

/// Energy deltas for the jump that moves the crank from state_before.gamma
/// to gamma_plus while conserving the rod angle and the rod component of
/// the generalized momentum:
///
///   dT = 1/2 M_rod(gamma) (M_rod(gamma)/M_rod(gamma+) - 1) thetadot^2
///   dV = -m_M g (r_M(gamma+) - r_M(gamma)) cos theta
///
/// For jumps between the crank extremes {0, pi} the potential change
/// reduces to +/- 2 m_M g rho cos theta.
JumpEnergyDelta jump_energy_delta(const State& state_before, double gamma_plus,
                                  const RobotParams& params);

/// Trapezoidal integral of sampled actuator power. Throws ConfigError if
/// the time stamps are not strictly increasing or the spans differ in size.
double accumulate_work(std::span<const double> t, std::span<const double> power);

}  // namespace brachsim
