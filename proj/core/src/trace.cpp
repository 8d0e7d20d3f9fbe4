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

#include "brachsim/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <system_error>

#include "brachsim/errors.hpp"

namespace brachsim {

const char kTraceHeader[] = "t,theta,gamma,dtheta,dgamma,u,gamma_d,T,T_radial,V,E,W_cum,phase";

namespace {

// Shortest decimal representation that round-trips the double exactly.
void append_double(std::string& out, double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string& origin, std::size_t line) {
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw TraceError(origin + ":" + std::to_string(line) + ": malformed number \"" +
                         std::string(token) + "\"");
    }
    return value;
}

const char* phase_name(PhaseTag phase) {
    return phase == PhaseTag::Swing ? "swing" : "rotation";
}

PhaseTag parse_phase(std::string_view token, const std::string& origin, std::size_t line) {
    if (token == "swing") {
        return PhaseTag::Swing;
    }
    if (token == "rotation") {
        return PhaseTag::Rotation;
    }
    throw TraceError(origin + ":" + std::to_string(line) + ": unknown phase \"" +
                     std::string(token) + "\"");
}

// Linear interpolation of channel y(ts) at time t; ts strictly increasing.
double interp(const std::vector<double>& ts, const std::vector<double>& ys, double t) {
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) {
        return ys.front();
    }
    if (it == ts.end()) {
        return ys.back();
    }
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double t1 = ts[i], t0 = ts[i - 1];
    const double a = (t - t0) / (t1 - t0);
    return ys[i - 1] + a * (ys[i] - ys[i - 1]);
}

// First time |theta| reaches pi, linearly interpolated; NaN if never.
double first_pi_crossing(const std::vector<double>& t, const std::vector<double>& theta) {
    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double a = std::fabs(theta[i - 1]);
        const double b = std::fabs(theta[i]);
        if (a < pi && b >= pi) {
            const double f = (pi - a) / (b - a);
            return t[i - 1] + f * (t[i] - t[i - 1]);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

const std::vector<double>& Trace::channel(const std::string& name) const {
    if (name == "t") return t;
    if (name == "theta") return theta;
    if (name == "gamma") return gamma;
    if (name == "dtheta") return dtheta;
    if (name == "dgamma") return dgamma;
    if (name == "u") return u;
    if (name == "gamma_d") return gamma_d;
    if (name == "T") return T;
    if (name == "T_radial") return T_radial;
    if (name == "V") return V;
    if (name == "E") return E;
    if (name == "W_cum") return W_cum;
    throw TraceError("unknown trace channel \"" + name + "\"");
}

bool Trace::is_channel_name(const std::string& name) {
    static const char* names[] = {"t", "theta", "gamma",    "dtheta", "dgamma", "u",
                                  "gamma_d", "T", "T_radial", "V",      "E",      "W_cum"};
    return std::any_of(std::begin(names), std::end(names),
                       [&name](const char* n) { return name == n; });
}

Trace to_trace(const Trajectory& trajectory) {
    Trace tr;
    const std::size_t n = trajectory.size();
    for (auto* v : {&tr.t, &tr.theta, &tr.gamma, &tr.dtheta, &tr.dgamma, &tr.u, &tr.gamma_d,
                    &tr.T, &tr.T_radial, &tr.V, &tr.E, &tr.W_cum}) {
        v->reserve(n);
    }
    tr.phase.reserve(n);
    for (const TrajectorySample& s : trajectory) {
        tr.t.push_back(s.t);
        tr.theta.push_back(s.state.theta);
        tr.gamma.push_back(s.state.gamma);
        tr.dtheta.push_back(s.state.dtheta);
        tr.dgamma.push_back(s.state.dgamma);
        tr.u.push_back(s.u);
        tr.gamma_d.push_back(s.gamma_d);
        tr.T.push_back(s.energy.T);
        tr.T_radial.push_back(s.energy.T_radial);
        tr.V.push_back(s.energy.V);
        tr.E.push_back(s.energy.E);
        tr.W_cum.push_back(s.W_cum);
        tr.phase.push_back(s.phase);
    }
    return tr;
}

void write_trace(std::ostream& out, const Trace& trace) {
    std::string buffer;
    buffer.reserve(256);
    out << kTraceHeader << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i) {
        buffer.clear();
        for (const auto* channel :
             {&trace.t, &trace.theta, &trace.gamma, &trace.dtheta, &trace.dgamma, &trace.u,
              &trace.gamma_d, &trace.T, &trace.T_radial, &trace.V, &trace.E, &trace.W_cum}) {
            append_double(buffer, (*channel)[i]);
            buffer.push_back(',');
        }
        buffer.append(phase_name(trace.phase[i]));
        buffer.push_back('\n');
        out << buffer;
    }
}

void write_trace_file(const std::string& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw TraceError("cannot open \"" + path + "\" for writing");
    }
    write_trace(out, trace);
    if (!out) {
        throw TraceError("failed while writing \"" + path + "\"");
    }
}

Trace read_trace(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) {
        throw TraceError(origin + ": empty trace");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kTraceHeader) {
        throw TraceError(origin + ": header mismatch; expected \"" + kTraceHeader + "\"");
    }

    Trace tr;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::array<std::string_view, 13> fields;
        std::string_view rest = line;
        for (std::size_t f = 0; f < 13; ++f) {
            const std::size_t comma = rest.find(',');
            if (f < 12 && comma == std::string_view::npos) {
                throw TraceError(origin + ":" + std::to_string(line_no) +
                                 ": expected 13 comma-separated fields");
            }
            fields[f] = f < 12 ? rest.substr(0, comma) : rest;
            if (f < 12) {
                rest = rest.substr(comma + 1);
            }
        }
        tr.t.push_back(parse_double(fields[0], origin, line_no));
        tr.theta.push_back(parse_double(fields[1], origin, line_no));
        tr.gamma.push_back(parse_double(fields[2], origin, line_no));
        tr.dtheta.push_back(parse_double(fields[3], origin, line_no));
        tr.dgamma.push_back(parse_double(fields[4], origin, line_no));
        tr.u.push_back(parse_double(fields[5], origin, line_no));
        tr.gamma_d.push_back(parse_double(fields[6], origin, line_no));
        tr.T.push_back(parse_double(fields[7], origin, line_no));
        tr.T_radial.push_back(parse_double(fields[8], origin, line_no));
        tr.V.push_back(parse_double(fields[9], origin, line_no));
        tr.E.push_back(parse_double(fields[10], origin, line_no));
        tr.W_cum.push_back(parse_double(fields[11], origin, line_no));
        tr.phase.push_back(parse_phase(fields[12], origin, line_no));
        if (tr.t.size() > 1 && !(tr.t[tr.t.size() - 1] > tr.t[tr.t.size() - 2])) {
            throw TraceError(origin + ":" + std::to_string(line_no) +
                             ": time stamps must be strictly increasing");
        }
    }
    if (tr.size() == 0) {
        throw TraceError(origin + ": trace has no samples");
    }
    return tr;
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw TraceError("cannot open trace file \"" + path + "\"");
    }
    return read_trace(in, path);
}

void write_jump_log_file(const std::string& path, std::span<const JumpEvent> jumps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw TraceError("cannot open \"" + path + "\" for writing");
    }
    out << "t,kind,theta,gamma_before,gamma_after,dtheta_before,dtheta_after,dT,dV\n";
    std::string buffer;
    for (const JumpEvent& j : jumps) {
        buffer.clear();
        append_double(buffer, j.t);
        buffer.push_back(',');
        switch (j.kind) {
            case JumpKind::StableEq: buffer.append("stable-eq"); break;
            case JumpKind::TurningAngle: buffer.append("turning-angle"); break;
            case JumpKind::UnstableEq: buffer.append("unstable-eq"); break;
        }
        for (double v : {j.before.theta, j.before.gamma, j.after.gamma, j.before.dtheta,
                         j.after.dtheta, j.dT, j.dV}) {
            buffer.push_back(',');
            append_double(buffer, v);
        }
        buffer.push_back('\n');
        out << buffer;
    }
}

bool CompareReport::within(double tol) const {
    return std::all_of(channels.begin(), channels.end(),
                       [tol](const ChannelDiff& c) { return c.rmse <= tol; });
}

CompareReport compare_traces(const Trace& a, const Trace& b,
                             std::span<const std::string> channels) {
    CompareReport report;
    report.overlap_begin = std::max(a.t.front(), b.t.front());
    report.overlap_end = std::min(a.t.back(), b.t.back());
    if (!(report.overlap_end > report.overlap_begin)) {
        throw TraceError("traces do not overlap in time");
    }

    // Grid of the coarser trace (fewer samples inside the overlap).
    auto count_in_overlap = [&](const Trace& tr) {
        return std::count_if(tr.t.begin(), tr.t.end(), [&](double t) {
            return t >= report.overlap_begin && t <= report.overlap_end;
        });
    };
    const Trace& coarse = count_in_overlap(a) <= count_in_overlap(b) ? a : b;

    std::vector<double> grid;
    for (double t : coarse.t) {
        if (t >= report.overlap_begin && t <= report.overlap_end) {
            grid.push_back(t);
        }
    }

    for (const std::string& name : channels) {
        const std::vector<double>& ca = a.channel(name);
        const std::vector<double>& cb = b.channel(name);
        double sum = 0.0;
        for (double t : grid) {
            const double va = interp(a.t, ca, t);
            const double vb = interp(b.t, cb, t);
            double diff = va - vb;
            if (std::isnan(va) && std::isnan(vb)) {
                diff = 0.0;  // policy-specific channels are NaN on both sides
            }
            sum += diff * diff;
        }
        report.channels.push_back(
            {name, grid.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(grid.size()))});
    }

    const double pa = first_pi_crossing(a.t, a.theta);
    const double pb = first_pi_crossing(b.t, b.theta);
    report.pi_cross_diff = pa - pb;
    report.terminal_theta_diff = a.theta.back() - b.theta.back();
    return report;
}

}  // namespace brachsim
