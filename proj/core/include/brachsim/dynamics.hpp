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

#include "brachsim/kinematics.hpp"
#include "brachsim/params.hpp"
#include "brachsim/state.hpp"

namespace brachsim {

/// Terms of the manipulator-form equations of motion
///
///   M(q) qdd + c(q, v) - tau_p(q) = d(q, v) + B u,   B = [0 1]^T,
///
/// evaluated at one state. The mass matrix of this model is diagonal, so
/// only its diagonal is stored:
///
///   M_rod   = I_R + m_M r_M^2 + m_R r_R^2
///   M_crank = I_S + m_M (dr_M/dgamma)^2
///
/// c collects Coriolis/centrifugal torques, tau_p the torques tied to the
/// potential energy, and d the viscous damping torques. The four terms are
/// kept separate because the controllers compensate the crank components
/// individually.
struct DynTerms {
    JointVec M;      ///< diagonal of the mass matrix [kg m^2]
    JointVec c;      ///< Coriolis/centrifugal torques [N m]
    JointVec tau_p;  ///< potential torques [N m]
    JointVec d;      ///< viscous damping torques [N m]
};

/// Evaluates all equation-of-motion terms at the given state.
DynTerms dyn_terms(const State& state, const RobotParams& params);

/// Continuous-time state derivative
///
///   xdot = [v; M^{-1} (-c + tau_p + d + B u)]
///
/// with the crank torque u as the single control input. The diagonal mass
/// matrix has M_crank >= I_S > 0 and M_rod > 0, so the inversion never
/// degenerates.
State state_derivative(const State& state, double u, const RobotParams& params);

/// Generalized momentum p = M(q) v. The rod component is the quantity
/// conserved across the instantaneous mass-repositioning jumps of the
/// limit-case policy.
JointVec generalized_momentum(const State& state, const RobotParams& params);

}  // namespace brachsim
