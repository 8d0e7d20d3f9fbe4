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

#include <vector>

#include "brachsim/integrator.hpp"
#include "brachsim/params.hpp"
#include "brachsim/run_types.hpp"
#include "brachsim/state.hpp"

namespace brachsim {

/// Event functions of the jump sets active in the given phase.
///
/// Swing:    StableEq  (sin(theta/2) crossing zero, i.e. cos theta = 1)
///           TurningAngle (thetadot crossing zero away from equilibria)
/// Rotation: StableEq and UnstableEq (cos(theta/2) crossing zero,
///           i.e. cos theta = -1)
std::vector<EventSpec> jump_set_events(PhaseTag phase);

/// Instantaneous repositioning of the crank to the extreme dictated by the
/// jump kind: the stable-equilibrium jump retracts the mass (gamma+ = pi),
/// the other two extend it (gamma+ = 0). The rod angle is kept and the rod
/// component of the generalized momentum is conserved, which scales the rod
/// velocity by M_rod(gamma)/M_rod(gamma+); the crank velocity resets to 0.
State jump_map(const State& x, JumpKind kind, const RobotParams& params);

/// Torque that freezes the crank between jumps: u = -d_crank + c_crank
/// - tau_p_crank cancels every crank-axis torque, so gammadd = 0. At the
/// crank extremes with zero crank speed all three terms vanish and the
/// input is identically zero.
double holding_input(const State& x, const RobotParams& params);

/// Runs the limit-case policy: flows under the holding input, applies the
/// jump map at every jump-set crossing, latches Swing -> Rotation at the
/// first |theta| = pi crossing, and stops per StopCondition. Throws
/// NonControllableStart when x0 rests at the stable equilibrium.
RunResult run_limit_case(const State& x0, const RobotParams& params, const IntegratorConfig& cfg,
                         const StopCondition& stop);

}  // namespace brachsim
