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

// Embedded Dormand-Prince 5(4) pair with the classic quartic continuous
// extension, plus event detection by sign-change bracketing on the dense
// output and hybrid bisection/secant root refinement.

#include "brachsim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "brachsim/dynamics.hpp"
#include "brachsim/errors.hpp"

namespace brachsim {

namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th and the embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

double error_norm(const State& err, const State& y0, const State& y1,
                  const IntegratorConfig& cfg) {
    const auto e = err.to_array();
    const auto a = y0.to_array();
    const auto b = y1.to_array();
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(a[i]), std::fabs(b[i]));
        const double q = e[i] / sc;
        sum += q * q;
    }
    return std::sqrt(sum / 4.0);
}

double initial_step(const RhsFn& rhs, double t0, const State& y0, const State& f0, double t_span,
                    const IntegratorConfig& cfg) {
    const auto a = y0.to_array();
    const auto f = f0.to_array();
    double d0 = 0.0, dd1 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::fabs(a[i]);
        d0 += (a[i] / sc) * (a[i] / sc);
        dd1 += (f[i] / sc) * (f[i] / sc);
    }
    d0 = std::sqrt(d0 / 4.0);
    dd1 = std::sqrt(dd1 / 4.0);
    double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    h0 = std::min(h0, t_span);

    const State y1 = y0 + h0 * f0;
    const State f1 = rhs(t0 + h0, y1);
    const auto df = (f1 - f0).to_array();
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::fabs(a[i]);
        d2 += (df[i] / sc) * (df[i] / sc);
    }
    d2 = std::sqrt(d2 / 4.0) / h0;

    double h1;
    const double dm = std::max(dd1, d2);
    if (dm <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / dm, 0.2);
    }
    return std::min({100.0 * h0, h1, cfg.max_step, t_span});
}

struct EventRuntime {
    double t_arm = 0.0;    // time before which the event may not fire
    double f_prev = 0.0;   // event value at the previous scan point
    bool have_prev = false;
};

bool direction_matches(CrossDirection want, double fa, double fb) {
    const bool rising = fa < 0.0 && fb >= 0.0;
    const bool falling = fa > 0.0 && fb <= 0.0;
    switch (want) {
        case CrossDirection::Rising:
            return rising;
        case CrossDirection::Falling:
            return falling;
        case CrossDirection::Any:
            return rising || falling;
    }
    return false;
}

// Root of g on [ta, tb] given g(ta) = fa, g(tb) = fb with a sign change.
// Bisection with a secant proposal per iteration; converges to event_tol.
double localize_root(const std::function<double(double)>& g, double ta, double fa, double tb,
                     double fb, double tol) {
    for (int iter = 0; iter < 200 && (tb - ta) > tol; ++iter) {
        double tm = 0.5 * (ta + tb);
        if (fb != fa) {
            const double ts = ta - fa * (tb - ta) / (fb - fa);
            const double guard = 0.1 * (tb - ta);
            if (ts > ta + guard && ts < tb - guard) {
                tm = ts;
            }
        }
        const double fm = g(tm);
        if (fm == 0.0) {
            return tm;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
            fb = fm;
        }
    }
    return tb;
}

}  // namespace

void IntegratorConfig::validate() const {
    auto bad = [](double v) { return !(std::isfinite(v) && v > 0.0); };
    if (bad(abs_tol)) throw ConfigError("integrator.abs_tol must be strictly positive");
    if (bad(rel_tol)) throw ConfigError("integrator.rel_tol must be strictly positive");
    if (bad(max_step)) throw ConfigError("integrator.max_step must be strictly positive");
    if (bad(event_tol)) throw ConfigError("integrator.event_tol must be strictly positive");
    if (!(std::isfinite(refractory) && refractory >= 0.0)) {
        throw ConfigError("integrator.refractory must be non-negative");
    }
}

State DenseSegment::eval(double t) const {
    if (t == t0) {
        return y0;
    }
    const double slack = 1e-12 * std::max(1.0, std::fabs(t_hi));
    if (t < t0 - slack || t > t_hi + slack) {
        throw std::out_of_range("DenseSegment::eval: t outside the segment span");
    }
    if (t == t0 + h) {
        return y1;
    }
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    // rc[0] + s (rc[1] + s1 (rc[2] + s (rc[3] + s1 rc[4])))
    State acc = rc[3] + s1 * rc[4];
    acc = rc[2] + s * acc;
    acc = rc[1] + s1 * acc;
    return rc[0] + s * acc;
}

FlowOutcome integrate_rhs_until_event(const RhsFn& rhs, const State& x0, double t0, double t_max,
                                      std::span<const EventSpec> events,
                                      const IntegratorConfig& cfg, const SegmentSink& on_segment) {
    cfg.validate();
    if (!x0.finite()) {
        throw IntegrationError(IntegrationError::Kind::NonFiniteState,
                               "integrate: initial state is not finite");
    }
    if (!(t_max > t0)) {
        throw ConfigError("integrate: t_max must exceed t0");
    }

    // Arm events. An event sitting exactly on its manifold at t0 either
    // fires immediately (if already armed) or is re-armed one refractory
    // window in, treating the start as the moment it last fired.
    std::vector<EventRuntime> ev(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        const double f0 = events[i].func(t0, x0);
        if (std::isinf(events[i].t_min_fire) && events[i].t_min_fire < 0.0) {
            ev[i].t_arm = (f0 == 0.0) ? t0 + cfg.refractory : t0;
        } else {
            ev[i].t_arm = events[i].t_min_fire;
        }
        if (f0 == 0.0 && t0 >= ev[i].t_arm) {
            return {t0, x0, i, CrossDirection::Any};
        }
    }

    double t = t0;
    State y = x0;
    State k1 = rhs(t, y);
    double h = initial_step(rhs, t0, y, k1, t_max - t0, cfg);
    bool rejected = false;

    while (t < t_max) {
        h = std::min(h, cfg.max_step);
        bool last = false;
        if (t + h >= t_max) {
            h = t_max - t;
            last = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(t), 1.0)) {
            throw IntegrationError(IntegrationError::Kind::StepSizeUnderflow,
                                   "integrate: step size underflow at t = " + std::to_string(t));
        }

        const State k2 = rhs(t + c2 * h, y + h * a21 * k1);
        const State k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const State k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 =
            rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = rhs(t + h, y1);

        if (!y1.finite()) {
            h *= 0.1;
            rejected = true;
            if (h < 1e-14 * std::max(std::fabs(t), 1.0)) {
                throw IntegrationError(IntegrationError::Kind::NonFiniteState,
                                       "integrate: state became non-finite at t = " +
                                           std::to_string(t));
            }
            continue;
        }

        const State err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double norm = error_norm(err, y, y1, cfg);

        if (!(norm <= 1.0)) {
            const double fac =
                std::isfinite(norm) ? std::max(kMinFactor, kSafety * std::pow(norm, -0.2)) : 0.1;
            h *= fac;
            rejected = true;
            continue;
        }

        // Accepted: build the continuous extension. The last step ends on
        // t_max exactly, sidestepping roundoff in t + h.
        const double t_new = last ? t_max : t + h;
        DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        seg.t_hi = t_new;
        seg.y0 = y;
        seg.y1 = y1;
        const State ydiff = y1 - y;
        const State bspl = h * k1 - ydiff;
        seg.rc[0] = y;
        seg.rc[1] = ydiff;
        seg.rc[2] = bspl;
        seg.rc[3] = ydiff - h * k7 - bspl;
        seg.rc[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

        // Scan events over the accepted span.
        double t_hit = std::numeric_limits<double>::infinity();
        std::size_t hit_index = 0;
        CrossDirection hit_dir = CrossDirection::Any;
        for (std::size_t i = 0; i < events.size(); ++i) {
            const EventSpec& spec = events[i];
            double a = t;
            double fa;
            if (ev[i].t_arm > t) {
                if (ev[i].t_arm >= t_new) {
                    ev[i].have_prev = false;
                    continue;
                }
                a = ev[i].t_arm;
                fa = spec.func(a, seg.eval(a));
            } else if (ev[i].have_prev) {
                fa = ev[i].f_prev;
            } else {
                fa = spec.func(t, y);
            }
            const double fb = spec.func(t_new, y1);
            ev[i].f_prev = fb;
            ev[i].have_prev = true;
            if (fa == 0.0 || !direction_matches(spec.direction, fa, fb)) {
                continue;
            }
            auto g = [&](double tq) { return spec.func(tq, seg.eval(tq)); };
            const double tr = localize_root(g, a, fa, t_new, fb, cfg.event_tol);
            // Prefer the earliest crossing; on ties (within the localization
            // tolerance) the event listed first wins.
            if (tr < t_hit - cfg.event_tol) {
                t_hit = tr;
                hit_index = i;
                hit_dir = fa < 0.0 ? CrossDirection::Rising : CrossDirection::Falling;
            }
        }

        if (std::isfinite(t_hit)) {
            seg.t_hi = t_hit;
            if (on_segment) {
                on_segment(seg);
            }
            return {t_hit, seg.eval(t_hit), hit_index, hit_dir};
        }

        if (on_segment) {
            on_segment(seg);
        }
        t = t_new;
        y = y1;
        k1 = k7;

        const double grow = norm <= 1e-30 ? kMaxFactor
                                          : std::min(kMaxFactor, kSafety * std::pow(norm, -0.2));
        h *= rejected ? std::min(1.0, grow) : grow;
        rejected = false;
        if (last && t >= t_max) {
            break;
        }
    }

    return {t_max, y, std::nullopt, CrossDirection::Any};
}

FlowOutcome integrate_until_event(const State& x0, const TorqueLaw& u_law,
                                  std::span<const EventSpec> events, double t0, double t_max,
                                  const IntegratorConfig& cfg, const RobotParams& params,
                                  const SegmentSink& on_segment) {
    RhsFn rhs = [&u_law, &params](double t, const State& x) {
        return state_derivative(x, u_law(t, x), params);
    };
    return integrate_rhs_until_event(rhs, x0, t0, t_max, events, cfg, on_segment);
}

}  // namespace brachsim
