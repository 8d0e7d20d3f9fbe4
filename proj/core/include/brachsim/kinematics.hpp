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

#include "brachsim/params.hpp"

namespace brachsim {

/// Slider position together with its first two derivatives with respect to
/// the crank angle.
struct SliderKinematics {
    double r = 0.0;    ///< r_M(gamma) [m]
    double dr = 0.0;   ///< d r_M / d gamma [m/rad]
    double ddr = 0.0;  ///< d^2 r_M / d gamma^2 [m/rad^2]
};

/// Position of the moving mass along the rod as a function of crank angle:
///
///   r_M(gamma) = d + rho cos(gamma) + e(gamma)
///   e(gamma)   = +/- (l - sqrt(l^2 - rho^2 sin^2 gamma))
///
/// The sign of e is selected by params.e_mode; Discard sets e = 0.
/// The invariant l > rho keeps the square root real for every gamma.
double slider_position(double gamma, const RobotParams& params);

/// Analytic first and second derivatives of slider_position with respect to
/// gamma, consistent with the active offset mode.
SliderKinematics slider_derivatives(double gamma, const RobotParams& params);

}  // namespace brachsim
