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

#include "brachsim/params.hpp"

#include <cmath>
#include <string>

#include "brachsim/errors.hpp"

namespace brachsim {

RobotParams RobotParams::reference() {
    RobotParams p;
    p.m_R = 0.587;
    p.I_R = 2.64e-2;
    p.r_R = 0.318;
    p.m_M = 0.886;
    p.I_S = 4.91e-3;
    p.rho = 0.02;
    p.l = 0.09;
    p.d = 0.28;
    p.b_R = 9.2e-3;
    p.b_C = 2.51e-2;
    p.b_S = 9.76e-3;
    p.u_max = 4.27;
    p.g = 9.81;
    p.e_mode = SliderOffsetMode::Discard;
    return p;
}

namespace {

void require_positive(double value, const char* field) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw ConfigError(std::string("params.") + field + " must be strictly positive");
    }
}

}  // namespace

void RobotParams::validate(bool strict_damping) const {
    require_positive(m_R, "m_R");
    require_positive(I_R, "I_R");
    require_positive(r_R, "r_R");
    require_positive(m_M, "m_M");
    require_positive(I_S, "I_S");
    require_positive(rho, "rho");
    require_positive(l, "l");
    require_positive(d, "d");
    require_positive(u_max, "u_max");
    require_positive(g, "g");
    if (strict_damping) {
        require_positive(b_R, "b_R");
        require_positive(b_C, "b_C");
        require_positive(b_S, "b_S");
    } else {
        for (double b : {b_R, b_C, b_S}) {
            if (!std::isfinite(b)) {
                throw ConfigError("params damping coefficients must be finite");
            }
        }
    }
    if (!(l > rho)) {
        throw ConfigError("params.l must exceed params.rho (connecting rod longer than crank)");
    }
    if (!(d - rho > 0.0)) {
        throw ConfigError("params.d - params.rho must be positive (slider stays on one side of the pivot)");
    }
}

}  // namespace brachsim
