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

#include "brachsim/config_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "brachsim/errors.hpp"

namespace brachsim {

namespace {

struct Value {
    enum class Kind { Number, Boolean, Text, NumberList } kind = Kind::Text;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    std::vector<double> list;
    int line = 0;
};

using Section = std::map<std::string, Value>;

struct RawConfig {
    std::string origin;
    std::map<std::string, Section> sections;  // "" holds root-level keys
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(const RawConfig& cfg, int line, const std::string& message) {
    std::ostringstream os;
    os << cfg.origin << ":" << line << ": " << message;
    throw ConfigError(os.str());
}

std::optional<double> parse_number(std::string_view token) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return value;
}

Value parse_value(const RawConfig& cfg, std::string_view token, int line) {
    Value v;
    v.line = line;
    if (token.empty()) {
        fail(cfg, line, "missing value");
    }
    if (token.front() == '"') {
        if (token.size() < 2 || token.back() != '"') {
            fail(cfg, line, "unterminated string");
        }
        v.kind = Value::Kind::Text;
        v.text = std::string(token.substr(1, token.size() - 2));
        return v;
    }
    if (token.front() == '[') {
        if (token.back() != ']') {
            fail(cfg, line, "unterminated array");
        }
        v.kind = Value::Kind::NumberList;
        std::string_view body = trim(token.substr(1, token.size() - 2));
        while (!body.empty()) {
            const std::size_t comma = body.find(',');
            const std::string_view item =
                trim(comma == std::string_view::npos ? body : body.substr(0, comma));
            const auto num = parse_number(item);
            if (!num) {
                fail(cfg, line, "array entries must be numbers");
            }
            v.list.push_back(*num);
            if (comma == std::string_view::npos) {
                break;
            }
            body = trim(body.substr(comma + 1));
        }
        return v;
    }
    if (token == "true" || token == "false") {
        v.kind = Value::Kind::Boolean;
        v.boolean = token == "true";
        return v;
    }
    if (const auto num = parse_number(token)) {
        v.kind = Value::Kind::Number;
        v.number = *num;
        return v;
    }
    v.kind = Value::Kind::Text;
    v.text = std::string(token);
    return v;
}

RawConfig parse_raw(std::string_view text, const std::string& origin) {
    RawConfig cfg;
    cfg.origin = origin;
    std::string current;  // section name, "" = root
    cfg.sections[current];

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        // Strip comments outside quotes.
        bool quoted = false;
        std::size_t cut = line.size();
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') {
                quoted = !quoted;
            } else if (line[i] == '#' && !quoted) {
                cut = i;
                break;
            }
        }
        line = trim(line.substr(0, cut));
        if (line.empty()) {
            continue;
        }

        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string_view::npos) {
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (current.empty()) {
                fail(cfg, line_no, "empty section name");
            }
            if (!cfg.sections.emplace(current, Section{}).second) {
                fail(cfg, line_no, "duplicate section [" + current + "]");
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(cfg, line_no, "expected key = value");
        }
        const std::string key{trim(line.substr(0, eq))};
        if (key.empty()) {
            fail(cfg, line_no, "empty key");
        }
        const Value value = parse_value(cfg, trim(line.substr(eq + 1)), line_no);
        if (!cfg.sections[current].emplace(key, value).second) {
            const std::string where = current.empty() ? "" : " in [" + current + "]";
            fail(cfg, line_no, "duplicate key \"" + key + "\"" + where);
        }
    }
    return cfg;
}

// Section accessor that tracks consumed keys so leftovers can be rejected.
class Reader {
public:
    Reader(const RawConfig& cfg, const std::string& section)
        : cfg_(cfg), name_(section) {
        const auto it = cfg.sections.find(section);
        section_ = it == cfg.sections.end() ? nullptr : &it->second;
    }

    bool present() const { return section_ != nullptr; }

    std::optional<double> number(const std::string& key) {
        const Value* v = take(key);
        if (!v) {
            return std::nullopt;
        }
        if (v->kind != Value::Kind::Number) {
            fail(cfg_, v->line, describe(key) + " must be a number");
        }
        return v->number;
    }

    double require_number(const std::string& key) {
        const auto v = number(key);
        if (!v) {
            throw ConfigError(cfg_.origin + ": missing required key " + describe(key));
        }
        return *v;
    }

    std::optional<bool> boolean(const std::string& key) {
        const Value* v = take(key);
        if (!v) {
            return std::nullopt;
        }
        if (v->kind != Value::Kind::Boolean) {
            fail(cfg_, v->line, describe(key) + " must be true or false");
        }
        return v->boolean;
    }

    std::optional<std::string> text(const std::string& key) {
        const Value* v = take(key);
        if (!v) {
            return std::nullopt;
        }
        if (v->kind != Value::Kind::Text) {
            fail(cfg_, v->line, describe(key) + " must be a string");
        }
        return v->text;
    }

    std::optional<std::vector<double>> number_list(const std::string& key) {
        const Value* v = take(key);
        if (!v) {
            return std::nullopt;
        }
        if (v->kind != Value::Kind::NumberList) {
            fail(cfg_, v->line, describe(key) + " must be an array of numbers");
        }
        return v->list;
    }

    void reject_unknown() const {
        if (!section_) {
            return;
        }
        for (const auto& [key, value] : *section_) {
            if (!consumed_.contains(key)) {
                fail(cfg_, value.line, "unknown key " + describe(key));
            }
        }
    }

private:
    const Value* take(const std::string& key) {
        if (!section_) {
            return nullptr;
        }
        const auto it = section_->find(key);
        if (it == section_->end()) {
            return nullptr;
        }
        consumed_.insert(key);
        return &it->second;
    }

    std::string describe(const std::string& key) const {
        return name_.empty() ? "\"" + key + "\"" : "\"" + key + "\" in [" + name_ + "]";
    }

    const RawConfig& cfg_;
    std::string name_;
    const Section* section_ = nullptr;
    std::set<std::string> consumed_;
};

SliderOffsetMode parse_e_mode(const RawConfig& cfg, const std::string& token) {
    if (token == "discard") return SliderOffsetMode::Discard;
    if (token == "plus") return SliderOffsetMode::Plus;
    if (token == "minus") return SliderOffsetMode::Minus;
    throw ConfigError(cfg.origin + ": e_mode must be one of discard|plus|minus, got \"" + token +
                      "\"");
}

Policy parse_policy(const RawConfig& cfg, const std::string& token) {
    if (token == "limit-case") return Policy::LimitCase;
    if (token == "continuous") return Policy::Continuous;
    if (token == "open-loop") return Policy::OpenLoop;
    throw ConfigError(cfg.origin +
                      ": policy must be one of limit-case|continuous|open-loop, got \"" + token +
                      "\"");
}

TieBreak parse_tie_break(const RawConfig& cfg, const std::string& token) {
    if (token == "hold-previous") return TieBreak::HoldPrevious;
    if (token == "force-retract") return TieBreak::ForceRetract;
    throw ConfigError(cfg.origin + ": tie_break must be hold-previous|force-retract, got \"" +
                      token + "\"");
}

}  // namespace

ScenarioConfig parse_scenario_text(std::string_view text, const std::string& origin,
                                   bool strict) {
    const RawConfig raw = parse_raw(text, origin);

    for (const auto& [name, section] : raw.sections) {
        if (name != "" && name != "params" && name != "controller" && name != "integrator" &&
            name != "stop" && name != "output") {
            throw ConfigError(origin + ": unknown section [" + name + "]");
        }
    }

    ScenarioConfig cfg;

    Reader root(raw, "");
    const auto policy = root.text("policy");
    if (!policy) {
        throw ConfigError(origin + ": missing required key \"policy\"");
    }
    cfg.policy = parse_policy(raw, *policy);
    const auto x0 = root.number_list("x0");
    if (!x0) {
        throw ConfigError(origin + ": missing required key \"x0\"");
    }
    if (x0->size() != 4) {
        throw ConfigError(origin + ": x0 must contain exactly 4 numbers [theta, gamma, dtheta, dgamma]");
    }
    cfg.x0 = State::from_array({(*x0)[0], (*x0)[1], (*x0)[2], (*x0)[3]});
    root.reject_unknown();

    Reader params(raw, "params");
    if (!params.present()) {
        throw ConfigError(origin + ": missing required section [params]");
    }
    cfg.params.m_R = params.require_number("m_R");
    cfg.params.I_R = params.require_number("I_R");
    cfg.params.r_R = params.require_number("r_R");
    cfg.params.m_M = params.require_number("m_M");
    cfg.params.I_S = params.require_number("I_S");
    cfg.params.rho = params.require_number("rho");
    cfg.params.l = params.require_number("l");
    cfg.params.d = params.require_number("d");
    cfg.params.b_R = params.require_number("b_R");
    cfg.params.b_C = params.require_number("b_C");
    cfg.params.b_S = params.require_number("b_S");
    cfg.params.u_max = params.require_number("u_max");
    if (const auto g = params.number("g")) {
        cfg.params.g = *g;
    }
    if (const auto mode = params.text("e_mode")) {
        cfg.params.e_mode = parse_e_mode(raw, *mode);
    }
    params.reject_unknown();

    Reader controller(raw, "controller");
    if (const auto v = controller.number("zeta")) cfg.controller.zeta = *v;
    if (const auto v = controller.number("omega")) cfg.controller.omega = *v;
    if (const auto v = controller.boolean("saturate")) cfg.controller.saturate = *v;
    if (const auto v = controller.text("tie_break")) {
        cfg.controller.tie_break = parse_tie_break(raw, *v);
    }
    controller.reject_unknown();

    Reader integrator(raw, "integrator");
    if (const auto v = integrator.number("abs_tol")) cfg.integrator.abs_tol = *v;
    if (const auto v = integrator.number("rel_tol")) cfg.integrator.rel_tol = *v;
    if (const auto v = integrator.number("max_step")) cfg.integrator.max_step = *v;
    if (const auto v = integrator.number("event_tol")) cfg.integrator.event_tol = *v;
    if (const auto v = integrator.number("refractory")) cfg.integrator.refractory = *v;
    integrator.reject_unknown();

    Reader stop(raw, "stop");
    if (const auto v = stop.number("theta_limit")) cfg.stop.theta_limit = *v;
    if (const auto v = stop.number("t_max")) cfg.stop.t_max = *v;
    stop.reject_unknown();

    Reader output(raw, "output");
    if (const auto v = output.number("sample_period")) cfg.output.sample_period = *v;
    if (const auto v = output.text("path")) cfg.output.path = *v;
    if (const auto v = output.text("jump_log_path")) cfg.output.jump_log_path = *v;
    output.reject_unknown();

    // Surface invalid values now, with the strictness the caller asked for.
    cfg.params.validate(strict);
    cfg.controller.validate();
    cfg.integrator.validate();
    if (strict) {
        cfg.validate();
    }
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path, strict);
}

}  // namespace brachsim
