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

#include <stdexcept>
#include <string>

namespace brachsim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or inconsistent configuration (bad parameter value, unknown or
/// missing config key, malformed scenario file). Messages name the
/// offending key or field.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Failure of the adaptive integrator.
class IntegrationError : public Error {
public:
    enum class Kind { StepSizeUnderflow, NonFiniteState };

    IntegrationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// A run was started at the uncontrollable rest configuration (rod hanging
/// at the stable equilibrium with zero angular velocity), from which the
/// internal mass cannot induce any body motion.
class NonControllableStart : public Error {
public:
    explicit NonControllableStart(const std::string& what) : Error(what) {}
};

/// Malformed or mismatching trace file.
class TraceError : public Error {
public:
    explicit TraceError(const std::string& what) : Error(what) {}
};

}  // namespace brachsim
