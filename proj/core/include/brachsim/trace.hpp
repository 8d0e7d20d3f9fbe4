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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "brachsim/run_types.hpp"

namespace brachsim {

/// Column names of the trace schema, in order:
/// t,theta,gamma,dtheta,dgamma,u,gamma_d,T,T_radial,V,E,W_cum,phase
extern const char kTraceHeader[];

/// In-memory trace: one vector per numeric channel plus the phase channel.
/// Numeric values are serialized with shortest round-trip decimals, so a
/// write/read cycle reproduces every double bit-exactly.
struct Trace {
    std::vector<double> t, theta, gamma, dtheta, dgamma, u, gamma_d;
    std::vector<double> T, T_radial, V, E, W_cum;
    std::vector<PhaseTag> phase;

    std::size_t size() const { return t.size(); }
    /// Numeric channel by header name; throws TraceError for unknown names.
    const std::vector<double>& channel(const std::string& name) const;
    static bool is_channel_name(const std::string& name);
};

Trace to_trace(const Trajectory& trajectory);

void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

/// Parses a trace; throws TraceError on header mismatch, malformed rows, or
/// non-increasing time stamps.
Trace read_trace(std::istream& in, const std::string& origin);
Trace read_trace_file(const std::string& path);

/// Jump log export (t, kind, angles and rod velocity across the jump,
/// energy deltas).
void write_jump_log_file(const std::string& path, std::span<const JumpEvent> jumps);

/// Result of comparing one channel between two traces.
struct ChannelDiff {
    std::string name;
    double rmse = 0.0;
};

/// Trace-against-trace comparison over the overlapping time span, resampled
/// to the coarser of the two grids. NaN values compare equal to NaN so that
/// policy-specific channels (gamma_d) do not poison the comparison.
struct CompareReport {
    std::vector<ChannelDiff> channels;
    double overlap_begin = 0.0, overlap_end = 0.0;
    double pi_cross_diff = 0.0;       ///< first |theta| = pi crossing, A - B [s]
    double terminal_theta_diff = 0.0; ///< final theta, A - B [rad]
    bool within(double tol) const;
};

CompareReport compare_traces(const Trace& a, const Trace& b,
                             std::span<const std::string> channels);

}  // namespace brachsim
