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

#include "brachsim/dynamics.hpp"

#include <cmath>

namespace brachsim {

DynTerms dyn_terms(const State& x, const RobotParams& p) {
    const SliderKinematics k = slider_derivatives(x.gamma, p);
    const double sin_th = std::sin(x.theta);
    const double cos_th = std::cos(x.theta);

    DynTerms t;
    t.M.rod = p.I_R + p.m_M * k.r * k.r + p.m_R * p.r_R * p.r_R;
    t.M.crank = p.I_S + p.m_M * k.dr * k.dr;

    t.c.rod = 2.0 * p.m_M * k.r * k.dr * x.dgamma * x.dtheta;
    t.c.crank = p.m_M * (k.dr * k.ddr * x.dgamma * x.dgamma - k.r * k.dr * x.dtheta * x.dtheta);

    t.tau_p.rod = -p.g * sin_th * (p.m_M * k.r + p.m_R * p.r_R);
    t.tau_p.crank = p.g * p.m_M * k.dr * cos_th;

    t.d.rod = -p.b_R * x.dtheta;
    t.d.crank = -p.b_C * x.dgamma - p.b_S * k.dr * k.dr * x.dgamma;
    return t;
}

State state_derivative(const State& x, double u, const RobotParams& p) {
    const DynTerms t = dyn_terms(x, p);
    State dx;
    dx.theta = x.dtheta;
    dx.gamma = x.dgamma;
    dx.dtheta = (-t.c.rod + t.tau_p.rod + t.d.rod) / t.M.rod;
    dx.dgamma = (-t.c.crank + t.tau_p.crank + t.d.crank + u) / t.M.crank;
    return dx;
}

JointVec generalized_momentum(const State& x, const RobotParams& p) {
    const DynTerms t = dyn_terms(x, p);
    return {t.M.rod * x.dtheta, t.M.crank * x.dgamma};
}

}  // namespace brachsim
