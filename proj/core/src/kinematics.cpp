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

#include "brachsim/kinematics.hpp"

#include <cmath>

namespace brachsim {

namespace {

double offset_sign(SliderOffsetMode mode) {
    switch (mode) {
        case SliderOffsetMode::Plus:
            return 1.0;
        case SliderOffsetMode::Minus:
            return -1.0;
        case SliderOffsetMode::Discard:
        default:
            return 0.0;
    }
}

}  // namespace

double slider_position(double gamma, const RobotParams& params) {
    const double s = std::sin(gamma);
    double e = 0.0;
    if (const double sgn = offset_sign(params.e_mode); sgn != 0.0) {
        const double root = std::sqrt(params.l * params.l - params.rho * params.rho * s * s);
        e = sgn * (params.l - root);
    }
    return params.d + params.rho * std::cos(gamma) + e;
}

SliderKinematics slider_derivatives(double gamma, const RobotParams& params) {
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    const double rho = params.rho;

    SliderKinematics k;
    k.r = params.d + rho * c;
    k.dr = -rho * s;
    k.ddr = -rho * c;

    if (const double sgn = offset_sign(params.e_mode); sgn != 0.0) {
        // e(g)   = sgn (l - R),            R = sqrt(l^2 - rho^2 sin^2 g)
        // e'(g)  = sgn rho^2 s c / R
        // e''(g) = sgn rho^2 ((c^2 - s^2)/R + rho^2 s^2 c^2 / R^3)
        const double R = std::sqrt(params.l * params.l - rho * rho * s * s);
        const double rho2 = rho * rho;
        k.r += sgn * (params.l - R);
        k.dr += sgn * rho2 * s * c / R;
        k.ddr += sgn * rho2 * ((c * c - s * s) / R + rho2 * s * s * c * c / (R * R * R));
    }
    return k;
}

}  // namespace brachsim
