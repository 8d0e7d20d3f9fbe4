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

#include "brachsim/run_types.hpp"

#include <algorithm>

namespace brachsim {

double DenseTrajectory::setpoint_at(double t) const {
    if (setpoint_steps.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    auto it = std::upper_bound(setpoint_steps.begin(), setpoint_steps.end(), t,
                               [](double value, const auto& node) { return value < node.first; });
    if (it == setpoint_steps.begin()) {
        return setpoint_steps.front().second;
    }
    return std::prev(it)->second;
}

double DenseTrajectory::work_at(double t) const {
    if (work_nodes.empty()) {
        return 0.0;
    }
    if (t <= work_nodes.front().first) {
        return work_nodes.front().second;
    }
    if (t >= work_nodes.back().first) {
        return work_nodes.back().second;
    }
    auto it = std::upper_bound(work_nodes.begin(), work_nodes.end(), t,
                               [](double value, const auto& node) { return value < node.first; });
    const auto& [t1, w1] = *it;
    const auto& [t0_, w0] = *std::prev(it);
    const double a = (t - t0_) / (t1 - t0_);
    return w0 + a * (w1 - w0);
}

}  // namespace brachsim
