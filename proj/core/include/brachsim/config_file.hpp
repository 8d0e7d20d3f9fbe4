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
#include <string_view>

#include "brachsim/scenario.hpp"

namespace brachsim {

/// Parses a scenario description from the flat-sectioned key-value format:
///
///   policy = "limit-case"            # limit-case | continuous | open-loop
///   x0 = [0.31, 0.0, 1.46, 0.0]      # theta, gamma, dtheta, dgamma
///
///   [params]       # physical parameters, SI units
///   m_R = 0.587
///   ...
///
///   [controller]   [integrator]   [stop]   [output]
///
/// Unknown keys and sections are rejected; errors carry the section, key,
/// and line number. `origin` names the source in error messages. When
/// `strict` is false the damping coefficients may be non-positive (used by
/// the self-check command to accept deliberately non-dissipative sets).
ScenarioConfig parse_scenario_text(std::string_view text, const std::string& origin,
                                   bool strict = true);

/// Reads and parses a scenario file. Throws ConfigError if unreadable.
ScenarioConfig load_scenario_file(const std::string& path, bool strict = true);

}  // namespace brachsim
