#include "ltorus/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "ltorus/ode.hpp"

namespace ltorus::shooting {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Hit: return "Hit";
        case Classification::Miss: return "Miss";
        default: return "Indeterminate";
    }
}

Classification classify_shot(const ShotOutcome& outcome) {
    switch (outcome.kind) {
        case EventKind::HitAxis: return Classification::Hit;
        case EventKind::HorizontalTangent: return Classification::Miss;
        default: return Classification::Indeterminate;
    }
}

bool BoundReport::all_pass() const {
    return radius_bound.pass && height_bound.pass && radius_monotone.pass && single_turn.pass;
}

BoundReport verify_bounds(const ProfileCurve& curve, const ModelParams& params, double slack) {
    if (curve.outcome.kind != EventKind::HitAxis &&
        curve.outcome.kind != EventKind::HorizontalTangent)
        throw std::invalid_argument("ltorus: bound checks need a shot ended by an axis hit or a horizontal tangent");
    if (curve.states.size() < 2)
        throw std::invalid_argument("ltorus: bound checks need at least 2 samples");

    const double pi = std::acos(-1.0);
    const double inf = std::numeric_limits<double>::infinity();
    double max_r = -inf;
    double max_x = -inf;
    double min_dr = inf;
    int sign_changes = 0;
    int prev_sign = 0;
    for (std::size_t i = 0; i < curve.states.size(); ++i) {
        const ProfileState& st = curve.states[i];
        max_r = std::max(max_r, st.r);
        max_x = std::max(max_x, st.x);
        if (i + 1 < curve.states.size())
            min_dr = std::min(min_dr, curve.states[i + 1].r - st.r);
        const double c = std::cos(st.theta);
        const int sign = c > 0.0 ? 1 : c < 0.0 ? -1 : 0;
        if (sign != 0) {
            if (prev_sign != 0 && sign != prev_sign) ++sign_changes;
            prev_sign = sign;
        }
    }

    const bool bounded = params.lambda > 0.0;
    const double r_limit =
        bounded ? std::sqrt(static_cast<double>(params.n - 1)) + pi / (2.0 * params.lambda) : inf;
    const double x_limit = bounded ? pi / (2.0 * params.lambda) : inf;

    BoundReport rep;
    rep.radius_bound = {max_r <= r_limit + slack, max_r, r_limit};
    rep.height_bound = {max_x <= x_limit + slack, max_x, x_limit};
    rep.radius_monotone = {min_dr > 0.0, min_dr, 0.0};
    rep.single_turn = {sign_changes <= 1, static_cast<double>(sign_changes), 1.0};
    return rep;
}

namespace {

Classification classify_delta(double delta, const ModelParams& params, const SolverConfig& config) {
    return classify_shot(ode::integrate_profile(delta, params, config).outcome);
}

}  // namespace

BracketScan establish_bracket(const ModelParams& params, const SolverConfig& config) {
    params.validate_for_search();
    config.validate();

    const int count = config.grid_points;
    if (count < 2) throw BracketError("ltorus: bracket grid needs at least 2 points");

    // The threshold itself launches a straight line that never terminates, so
    // the grid stops just under it.
    const double top = upward_threshold(params) * (1.0 - 1e-6);
    const double bottom = upward_threshold(params) * 1e-3;
    std::vector<double> deltas(count);
    for (int k = 0; k < count; ++k)
        deltas[k] = bottom * std::pow(top / bottom, static_cast<double>(k) / (count - 1));
    deltas.back() = top;

    std::vector<Classification> cls(count, Classification::Indeterminate);
    const int jobs = std::min(config.jobs, count);
    if (jobs <= 1) {
        for (int k = 0; k < count; ++k) cls[k] = classify_delta(deltas[k], params, config);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&, t] {
                for (int k = t; k < count; k += jobs)
                    cls[k] = classify_delta(deltas[k], params, config);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    BracketScan scan;
    scan.samples.reserve(count);
    for (int k = 0; k < count; ++k) scan.samples.push_back({deltas[k], cls[k]});
    for (int k = 0; k + 1 < count; ++k)
        if (cls[k] == Classification::Hit && cls[k + 1] == Classification::Miss)
            scan.transitions.emplace_back(deltas[k], deltas[k + 1]);

    if (scan.transitions.empty()) {
        const long hits = std::count(cls.begin(), cls.end(), Classification::Hit);
        const long misses = std::count(cls.begin(), cls.end(), Classification::Miss);
        throw BracketError("ltorus: no Hit/Miss transition on the launch grid (" +
                           std::to_string(hits) + " hits, " + std::to_string(misses) +
                           " misses over " + std::to_string(count) + " points)");
    }
    scan.lo = scan.transitions.front().first;
    scan.hi = scan.transitions.front().second;
    return scan;
}

TorusSolution find_delta_star(const ModelParams& params, const SolverConfig& config) {
    params.validate_for_search();
    config.validate();

    TorusSolution sol;
    double lo = 0.0;
    double hi = 0.0;
    if (config.delta_lo != 0.0 || config.delta_hi != 0.0) {
        lo = config.delta_lo;
        hi = config.delta_hi;
        const Classification clo = classify_delta(lo, params, config);
        sol.history.push_back({lo, clo});
        if (clo == Classification::Indeterminate)
            throw IndeterminateError("ltorus: lower bracket end is indeterminate at delta = " +
                                         std::to_string(lo),
                                     lo);
        const Classification chi = classify_delta(hi, params, config);
        sol.history.push_back({hi, chi});
        if (chi == Classification::Indeterminate)
            throw IndeterminateError("ltorus: upper bracket end is indeterminate at delta = " +
                                         std::to_string(hi),
                                     hi);
        if (clo == chi)
            throw BracketError(std::string("ltorus: both bracket ends classify ") + to_string(clo));
        if (clo == Classification::Miss)
            throw BracketError("ltorus: bracket inverted, lower end misses while upper end hits");
        sol.transitions.emplace_back(lo, hi);
    } else {
        BracketScan scan = establish_bracket(params, config);
        lo = scan.lo;
        hi = scan.hi;
        sol.history = std::move(scan.samples);
        sol.transitions = std::move(scan.transitions);
    }

    while (hi - lo > config.bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket narrower than double resolution
        const Classification c = classify_delta(mid, params, config);
        sol.history.push_back({mid, c});
        if (c == Classification::Indeterminate)
            throw IndeterminateError("ltorus: indeterminate shot at bracket midpoint delta = " +
                                         std::to_string(mid),
                                     mid);
        if (c == Classification::Hit)
            lo = mid;
        else
            hi = mid;
    }

    ProfileCurve curve = ode::integrate_profile(lo, params, config);
    if (classify_shot(curve.outcome) != Classification::Hit)
        throw SolverError("ltorus: final bracket end failed to reproduce its classification");

    sol.delta_star = lo;
    sol.bracket_width = hi - lo;
    sol.tangent_error = std::abs(curve.outcome.x_prime_terminal + 1.0);
    if (sol.tangent_error > config.angle_tol)
        throw NoConvergenceError("ltorus: terminal tangent misses horizontal by " +
                                     std::to_string(sol.tangent_error) +
                                     " in cos(theta) at the bracket width limit",
                                 sol.tangent_error);
    sol.r_star = curve.outcome.axis_radius();
    if (!(sol.delta_star > 0.0 && sol.delta_star < sol.r_star))
        throw SolverError("ltorus: solution violates 0 < delta* < r*");

    sol.bound_report = verify_bounds(curve, params, config.bound_slack);
    sol.closed_profile = geometry::build_closed_profile(curve, config.angle_tol);

    auto max_residual = [&](const ProfileCurve& c) {
        double worst = 0.0;
        for (const ProfileState& st : c.states)
            worst = std::max(worst, std::abs(geometry::lambda_residual(st, params)));
        return worst;
    };
    sol.residual_max = max_residual(curve);
    SolverConfig halved = config;
    halved.step = 0.5 * config.step;
    sol.residual_max_half_step = max_residual(ode::integrate_profile(lo, params, halved));

    sol.half_profile = std::move(curve);
    return sol;
}

}  // namespace ltorus::shooting
