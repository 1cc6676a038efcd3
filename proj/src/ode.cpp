#include "ltorus/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ltorus {

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::HitAxis: return "HitAxis";
        case EventKind::HorizontalTangent: return "HorizontalTangent";
        case EventKind::RadialSingularity: return "RadialSingularity";
        case EventKind::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

}  // namespace ltorus

namespace ltorus::ode {

double curvature(const ProfileState& state, const ModelParams& params) {
    if (!(state.r > 0.0)) throw std::domain_error("ltorus: curvature requires r > 0");
    const double ct = std::cos(state.theta);
    const double st = std::sin(state.theta);
    return state.x * st + ((params.n - 1) / state.r - state.r) * ct + params.lambda;
}

namespace {

struct Deriv {
    double dx, dr, dtheta;
};

inline Deriv rhs(const ProfileState& y, const ModelParams& p) {
    const double ct = std::cos(y.theta);
    const double st = std::sin(y.theta);
    return {ct, st, y.x * st + ((p.n - 1) / y.r - y.r) * ct + p.lambda};
}

inline ProfileState advance(const ProfileState& y, const Deriv& d, double h) {
    return {y.s + h, y.x + h * d.dx, y.r + h * d.dr, y.theta + h * d.dtheta};
}

}  // namespace

ProfileState rk4_step(const ProfileState& y, const ModelParams& p, double h) {
    const Deriv k1 = rhs(y, p);
    const Deriv k2 = rhs(advance(y, k1, 0.5 * h), p);
    const Deriv k3 = rhs(advance(y, k2, 0.5 * h), p);
    const Deriv k4 = rhs(advance(y, k3, h), p);
    return {y.s + h,
            y.x + h / 6.0 * (k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx),
            y.r + h / 6.0 * (k1.dr + 2.0 * (k2.dr + k3.dr) + k4.dr),
            y.theta + h / 6.0 * (k1.dtheta + 2.0 * (k2.dtheta + k3.dtheta) + k4.dtheta)};
}

namespace {

// Event functions, indexed to match EventKind for the first three kinds.
inline double event_value(int which, const ProfileState& y, double r_floor) {
    switch (which) {
        case 0: return y.x;                // axis crossing
        case 1: return std::sin(y.theta);  // horizontal tangent
        default: return y.r - r_floor;     // radial singularity
    }
}

struct LocatedEvent {
    int which = -1;
    double tau = 0.0;  // offset from the anchor state
    ProfileState state;
};

// Refine a sign change of event function `which` inside (anchor, anchor+h]
// by bisection on a partial RK4 step from the anchor. Stops once the bracket
// in s and the event value are both within event_tol.
LocatedEvent refine_event(int which, const ProfileState& anchor, const ModelParams& params,
                          double h, double g_lo, const ProfileState& right, double g_hi,
                          double r_floor, double event_tol) {
    double lo = 0.0, hi = h;
    ProfileState best = right;
    double g_best = g_hi;
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= event_tol && std::abs(g_best) <= event_tol) break;
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const ProfileState probe = rk4_step(anchor, params, mid);
        const double g_mid = event_value(which, probe, r_floor);
        if ((g_mid < 0.0) == (g_lo < 0.0) && g_mid != 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        best = probe;
        g_best = g_mid;
    }
    return {which, best.s - anchor.s, best};
}

}  // namespace

ProfileCurve integrate_profile(double delta, const ModelParams& params, const SolverConfig& config) {
    params.validate_for_shot();
    config.validate();
    if (!(delta > 0.0)) throw std::domain_error("ltorus: delta must be > 0");
    if (delta <= config.r_floor)
        throw std::domain_error("ltorus: delta must exceed r_floor");

    const double h = config.step;
    const double s_max = config.arclength_budget(params);

    ProfileCurve curve;
    curve.params = params;
    curve.delta = delta;
    curve.step = h;

    ProfileState y{0.0, 0.0, delta, 0.0};
    curve.states.push_back(y);

    bool budget_reached = false;
    while (true) {
        double step = h;
        if (y.s + step >= s_max) {
            step = s_max - y.s;
            budget_reached = true;
            if (step <= 0.0) break;
        }
        ProfileState next = rk4_step(y, params, step);
        if (budget_reached) next.s = s_max;

        LocatedEvent first;
        for (int which = 0; which < 3; ++which) {
            const double g0 = event_value(which, y, config.r_floor);
            const double g1 = event_value(which, next, config.r_floor);
            const bool crossed = (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0);
            if (!crossed) continue;
            LocatedEvent ev = refine_event(which, y, params, step, g0, next, g1,
                                           config.r_floor, config.event_tol);
            if (ev.state.s <= config.event_tol) continue;  // launch tangent masked
            if (first.which < 0 || ev.tau < first.tau) first = ev;
        }

        if (first.which >= 0) {
            ShotOutcome out;
            out.kind = first.which == 0   ? EventKind::HitAxis
                       : first.which == 1 ? EventKind::HorizontalTangent
                                          : EventKind::RadialSingularity;
            out.terminal = first.state;
            out.s1 = first.state.s;
            out.x_prime_terminal = std::cos(first.state.theta);
            out.cos_sign = out.x_prime_terminal >= 0.0 ? 1 : -1;
            curve.states.push_back(first.state);
            curve.outcome = out;
            return curve;
        }

        y = next;
        curve.states.push_back(y);
        if (budget_reached) {
            ShotOutcome out;
            out.kind = EventKind::BudgetExhausted;
            out.terminal = y;
            out.s1 = y.s;
            out.x_prime_terminal = std::cos(y.theta);
            out.cos_sign = out.x_prime_terminal >= 0.0 ? 1 : -1;
            curve.outcome = out;
            return curve;
        }
    }

    ShotOutcome out;
    out.kind = EventKind::BudgetExhausted;
    out.terminal = y;
    out.s1 = y.s;
    out.x_prime_terminal = std::cos(y.theta);
    out.cos_sign = out.x_prime_terminal >= 0.0 ? 1 : -1;
    curve.outcome = out;
    return curve;
}

namespace {

// Fixed-step integration of the smooth sub-arc [0, s_end], no event handling.
ProfileState run_plain(double delta, const ModelParams& params, double h, double s_end) {
    ProfileState y{0.0, 0.0, delta, 0.0};
    const long steps = std::lround(s_end / h);
    for (long i = 0; i < steps; ++i) y = rk4_step(y, params, h);
    return y;
}

inline double state_distance(const ProfileState& a, const ProfileState& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.r - b.r), std::abs(a.theta - b.theta)});
}

}  // namespace

double integration_order_check(const ModelParams& params, double delta,
                               const OrderCheckOptions& opts) {
    params.validate_for_shot();
    if (!(delta > 0.0)) throw std::domain_error("ltorus: delta must be > 0");
    if (!(opts.ratio > 1.0))
        throw std::invalid_argument("ltorus: order check requires a step ratio > 1");
    if (!(opts.base_step > 0.0 && opts.s_end > opts.base_step))
        throw std::invalid_argument("ltorus: order check requires 0 < base_step < s_end");

    const double q = opts.ratio;
    // Snap the sub-arc length to a whole number of coarse steps so all four
    // runs sample the same endpoint.
    const double h0 = opts.base_step;
    const double s_end = std::max(1.0, std::floor(opts.s_end / h0)) * h0;

    const ProfileState ref = run_plain(delta, params, h0 / (q * q * q), s_end);
    const double e0 = state_distance(run_plain(delta, params, h0, s_end), ref);
    const double e1 = state_distance(run_plain(delta, params, h0 / q, s_end), ref);
    const double e2 = state_distance(run_plain(delta, params, h0 / (q * q), s_end), ref);

    if (e0 <= 0.0 || e1 <= 0.0 || e2 <= 0.0)
        throw SolverError("ltorus: order check errors vanished; increase base_step");

    // Least-squares slope of log(e) against log(h) over the three rungs.
    const double lq = std::log(q);
    const double p1 = std::log(e0 / e1) / lq;
    const double p2 = std::log(e1 / e2) / lq;
    return 0.5 * (p1 + p2);
}

}  // namespace ltorus::ode
