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

#include <string>
#include <vector>

#include "brachsim/params.hpp"

namespace brachsim::checks {

struct CheckResult {
    std::string suite;
    bool passed = false;
    std::string detail;  ///< worst-case figure or first failure description
};

/// Analytic slider derivatives against central finite differences of the
/// slider position, all offset modes.
CheckResult gradient_suite(const RobotParams& params);

/// Mass matrix, Coriolis vector, and potential torques against finite
/// differences of the kinetic and potential energy at random states.
CheckResult lagrangian_suite(const RobotParams& params);

/// Energy behavior along integrated trajectories: exact conservation
/// without damping and input, monotone decay with damping.
CheckResult conservation_suite(const RobotParams& params);

/// Jump-map bookkeeping: rod angle and momentum conservation, crank reset,
/// and closed-form energy deltas against direct energy evaluation.
CheckResult jump_momentum_suite(const RobotParams& params);

/// Closed-loop linearization residual of the continuous controller.
CheckResult linearization_suite(const RobotParams& params);

/// All suites in a fixed order.
std::vector<CheckResult> run_all(const RobotParams& params);

}  // namespace brachsim::checks
