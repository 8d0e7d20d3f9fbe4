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

namespace brachsim {

/// Sign convention for the connecting-rod offset e(gamma) of the crank-slide
/// transmission. The sign depends on which end of the rod is grasping the
/// bar; the term is small for l >> rho and may be dropped entirely.
enum class SliderOffsetMode {
    Discard,  ///< e(gamma) = 0 (small-offset approximation)
    Plus,     ///< e(gamma) = +(l - sqrt(l^2 - rho^2 sin^2 gamma))
    Minus,    ///< e(gamma) = -(l - sqrt(l^2 - rho^2 sin^2 gamma))
};

/// Physical parameters of the single-rod robot: a rigid rod pivoting about
/// the grasped bar, with a point mass moved along the rod by a crank-slide
/// mechanism.
struct RobotParams {
    double m_R = 0.0;  ///< rod mass [kg]
    double I_R = 0.0;  ///< rod inertia about its own COM [kg m^2]
    double r_R = 0.0;  ///< distance of the rod COM from the pivot [m]
    double m_M = 0.0;  ///< moving mass [kg]
    double I_S = 0.0;  ///< combined crank + gearbox + motor inertia [kg m^2]
    double rho = 0.0;  ///< crank radius [m]
    double l = 0.0;    ///< connecting-rod length [m]
    double d = 0.0;    ///< mean slider position along the rod [m]
    double b_R = 0.0;  ///< viscous damping, rod bearing [N m s/rad]
    double b_C = 0.0;  ///< viscous damping, crank bearing [N m s/rad]
    double b_S = 0.0;  ///< viscous damping, linear slide [N s/m]
    double u_max = 0.0;  ///< peak motor torque [N m]
    double g = 9.81;     ///< gravitational acceleration [m/s^2]
    SliderOffsetMode e_mode = SliderOffsetMode::Discard;

    /// Identified desk-scale parameter set used by the bundled reference
    /// scenarios.
    static RobotParams reference();

    /// Throws ConfigError naming the offending field. With
    /// `strict_damping == false` the sign of the damping coefficients is
    /// not checked, which lets deliberately non-dissipative parameter sets
    /// reach the self-check suites.
    void validate(bool strict_damping = true) const;
};

}  // namespace brachsim
