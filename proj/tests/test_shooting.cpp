#include "doctest.h"

#include <cmath>

#include "ltorus/geometry.hpp"
#include "ltorus/ode.hpp"
#include "ltorus/shooting.hpp"
#include "oracle.hpp"

using namespace ltorus;
using shooting::Classification;

namespace {

// solved critical launch heights at the default configuration
constexpr double kDeltaStar21 = 0.5354818856142163;    // n=2, lambda=1
constexpr double kDeltaStar205 = 0.44404692503524162;  // n=2, lambda=0.5
constexpr double kDeltaStar31 = 0.917140617506079;     // n=3, lambda=1
constexpr double kRStar21 = 1.7042480218116929;
constexpr double kS1Star21 = 1.7264941550253086;

ProfileCurve fake_curve(EventKind kind, std::vector<ProfileState> states) {
    ProfileCurve curve;
    curve.params = {2, 1.0};
    curve.delta = states.front().r;
    curve.step = 1e-2;
    curve.outcome.kind = kind;
    curve.outcome.s1 = states.back().s;
    curve.outcome.terminal = states.back();
    curve.outcome.x_prime_terminal = std::cos(states.back().theta);
    curve.states = std::move(states);
    return curve;
}

}  // namespace

TEST_CASE("shot outcomes classify by their terminating event") {
    ShotOutcome o;
    o.kind = EventKind::HitAxis;
    CHECK(shooting::classify_shot(o) == Classification::Hit);
    o.kind = EventKind::HorizontalTangent;
    CHECK(shooting::classify_shot(o) == Classification::Miss);
    o.kind = EventKind::BudgetExhausted;
    CHECK(shooting::classify_shot(o) == Classification::Indeterminate);
    o.kind = EventKind::RadialSingularity;
    CHECK(shooting::classify_shot(o) == Classification::Indeterminate);

    const ModelParams params{2, 1.0};
    CHECK(shooting::classify_shot(ode::integrate_profile(0.1, params, {}).outcome) ==
          Classification::Hit);
    CHECK(shooting::classify_shot(ode::integrate_profile(1.5, params, {}).outcome) ==
          Classification::Miss);
    CHECK(shooting::classify_shot(
              ode::integrate_profile(upward_threshold(params), params, {}).outcome) ==
          Classification::Indeterminate);
}

TEST_CASE("a priori bounds hold on real hit shots") {
    const ModelParams params{2, 1.0};
    const double pi = std::acos(-1.0);
    for (const double delta : {0.1, 0.3, kDeltaStar21}) {
        CAPTURE(delta);
        const ProfileCurve curve = ode::integrate_profile(delta, params, {});
        REQUIRE(curve.outcome.kind == EventKind::HitAxis);
        const shooting::BoundReport rep = shooting::verify_bounds(curve, params);
        CHECK(rep.all_pass());
        CHECK(rep.radius_bound.limit == doctest::Approx(1.0 + pi / 2));
        CHECK(rep.height_bound.limit == doctest::Approx(pi / 2));
        CHECK(rep.radius_bound.measured <= rep.radius_bound.limit + 1e-6);
        CHECK(rep.height_bound.measured <= rep.height_bound.limit + 1e-6);
        CHECK(rep.single_turn.measured == 1.0);
    }
}

TEST_CASE("synthetic curves fail exactly the right bound") {
    SUBCASE("double turn") {
        // wiggle the tangent across vertical twice while r keeps growing
        std::vector<ProfileState> states;
        const double angles[] = {0.5, 2.5, 0.5, 2.5};
        for (int i = 0; i < 4; ++i)
            states.push_back({0.1 * i, 0.05 * (i % 2), 0.5 + 0.1 * i, angles[i]});
        const ProfileCurve curve = fake_curve(EventKind::HitAxis, states);
        const shooting::BoundReport rep = shooting::verify_bounds(curve, {2, 1.0});
        CHECK_FALSE(rep.single_turn.pass);
        CHECK(rep.single_turn.measured == 3.0);
        CHECK(rep.radius_monotone.pass);
    }
    SUBCASE("flat radius") {
        const double pi = std::acos(-1.0);
        std::vector<ProfileState> states;
        for (int i = 0; i < 5; ++i) states.push_back({0.1 * i, 1.0 - 0.1 * i, 0.7, pi});
        const ProfileCurve curve = fake_curve(EventKind::HitAxis, states);
        const shooting::BoundReport rep = shooting::verify_bounds(curve, {2, 1.0});
        CHECK_FALSE(rep.radius_monotone.pass);
        CHECK(rep.radius_monotone.measured == 0.0);
        CHECK(rep.single_turn.pass);
    }
    SUBCASE("unterminated curves are rejected") {
        std::vector<ProfileState> states = {{0.0, 0.0, 0.5, 0.0}, {0.1, 0.1, 0.55, 0.2}};
        const ProfileCurve curve = fake_curve(EventKind::BudgetExhausted, states);
        CHECK_THROWS_AS(shooting::verify_bounds(curve, {2, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("the grid scan brackets the hit-miss transition") {
    const ModelParams params{2, 1.0};
    SolverConfig config;
    const shooting::BracketScan scan = shooting::establish_bracket(params, config);

    CHECK(scan.lo < scan.hi);
    CHECK(scan.lo > 0.0);
    CHECK(scan.hi < upward_threshold(params));
    CHECK(scan.samples.size() == 48);
    CHECK(scan.transitions.size() == 1);
    CHECK(scan.transitions.front().first == scan.lo);
    CHECK(scan.transitions.front().second == scan.hi);

    // the independently scanned critical interval falls inside the bracket
    CHECK(scan.lo < oracle::kTransitionHi21);
    CHECK(scan.hi > oracle::kTransitionLo21);

    for (std::size_t i = 1; i < scan.samples.size(); ++i)
        CHECK(scan.samples[i - 1].delta < scan.samples[i].delta);

    CHECK(shooting::classify_shot(ode::integrate_profile(scan.lo, params, config).outcome) ==
          Classification::Hit);
    CHECK(shooting::classify_shot(ode::integrate_profile(scan.hi, params, config).outcome) ==
          Classification::Miss);
}

TEST_CASE("the scan works away from the base dimension") {
    const ModelParams params{5, 2.0};
    const shooting::BracketScan scan = shooting::establish_bracket(params, {});
    CHECK(scan.lo > 0.0);
    CHECK(scan.hi < upward_threshold(params));
    CHECK(upward_threshold(params) == doctest::Approx((std::sqrt(20.0) + 2.0) / 2.0));
    CHECK(scan.lo == doctest::Approx(1.55191636).epsilon(1e-6));
    CHECK(scan.hi == doctest::Approx(1.79762082).epsilon(1e-6));
}

TEST_CASE("degenerate grids cannot bracket") {
    const ModelParams params{2, 1.0};
    SolverConfig one;
    one.grid_points = 1;
    CHECK_THROWS_AS(shooting::establish_bracket(params, one), BracketError);

    SolverConfig starved;
    starved.max_arclength = 0.01;  // every shot runs out before any event
    CHECK_THROWS_AS(shooting::establish_bracket(params, starved), BracketError);
}

TEST_CASE("threaded scans agree with the sequential one") {
    const ModelParams params{2, 1.0};
    SolverConfig seq;
    SolverConfig par;
    par.jobs = 4;
    const shooting::BracketScan a = shooting::establish_bracket(params, seq);
    const shooting::BracketScan b = shooting::establish_bracket(params, par);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].delta == b.samples[i].delta);
        CHECK(a.samples[i].cls == b.samples[i].cls);
    }
}

TEST_CASE("bisection narrows onto the tangential return") {
    const ModelParams params{2, 1.0};
    SolverConfig config;
    const shooting::TorusSolution sol = shooting::find_delta_star(params, config);

    CHECK(std::abs(sol.delta_star - kDeltaStar21) < 2e-9);
    CHECK(sol.delta_star > oracle::kTransitionLo21);
    CHECK(sol.delta_star < oracle::kTransitionHi21);
    CHECK(sol.bracket_width <= config.bisect_tol);
    CHECK(sol.tangent_error <= config.angle_tol);
    CHECK(std::abs(sol.r_star - kRStar21) < 1e-8);
    CHECK(std::abs(sol.half_profile.outcome.s1 - kS1Star21) < 1e-8);
    CHECK(sol.residual_max <= config.residual_tol);
    CHECK(sol.residual_max_half_step <= config.residual_tol / 8.0);
    CHECK(sol.bound_report.all_pass());
    CHECK(sol.delta_star < sol.r_star);
    CHECK(sol.delta_star < upward_threshold(params));
    CHECK(geometry::simplicity_check(sol.closed_profile.points));

    // grid samples plus one bisection step per halving of the initial width
    const double width0 = sol.transitions.front().second - sol.transitions.front().first;
    const auto expected_mids =
        static_cast<std::size_t>(std::ceil(std::log2(width0 / config.bisect_tol)));
    CHECK(sol.history.size() == 48 + expected_mids);
}

TEST_CASE("solutions across the parameter grid stay inside their brackets") {
    SUBCASE("low lambda") {
        const shooting::TorusSolution sol = shooting::find_delta_star({2, 0.5}, {});
        CHECK(std::abs(sol.delta_star - kDeltaStar205) < 2e-9);
        CHECK(sol.delta_star > oracle::kTransitionLo205);
        CHECK(sol.delta_star < oracle::kTransitionHi205);
        CHECK(sol.r_star <= 1.0 + std::acos(-1.0));  // radius bound at lambda = 1/2
    }
    SUBCASE("higher dimension") {
        const shooting::TorusSolution sol = shooting::find_delta_star({3, 1.0}, {});
        CHECK(std::abs(sol.delta_star - kDeltaStar31) < 2e-9);
        CHECK(sol.bound_report.all_pass());
    }
}

TEST_CASE("explicit brackets are honored or rejected") {
    const ModelParams params{2, 1.0};
    SUBCASE("a valid supplied bracket reproduces the solution") {
        SolverConfig config;
        config.delta_lo = 0.5;
        config.delta_hi = 0.6;
        const shooting::TorusSolution sol = shooting::find_delta_star(params, config);
        CHECK(std::abs(sol.delta_star - kDeltaStar21) < 2e-9);
        const auto expected_mids =
            static_cast<std::size_t>(std::ceil(std::log2(0.1 / config.bisect_tol)));
        CHECK(sol.history.size() == 2 + expected_mids);
    }
    SUBCASE("both ends hitting") {
        SolverConfig config;
        config.delta_lo = 0.1;
        config.delta_hi = 0.2;
        CHECK_THROWS_AS(shooting::find_delta_star(params, config), BracketError);
    }
    SUBCASE("both ends missing") {
        SolverConfig config;
        config.delta_lo = 1.0;
        config.delta_hi = 1.2;
        CHECK_THROWS_AS(shooting::find_delta_star(params, config), BracketError);
    }
    SUBCASE("degenerate bracket") {
        SolverConfig config;
        config.delta_lo = 0.53;
        config.delta_hi = 0.53;
        CHECK_THROWS_AS(shooting::find_delta_star(params, config), BracketError);
    }
    SUBCASE("indeterminate endpoint is reported with its height") {
        SolverConfig config;
        config.delta_lo = 0.1;
        config.delta_hi = 0.2;
        config.max_arclength = 0.01;
        try {
            shooting::find_delta_star(params, config);
            FAIL("expected IndeterminateError");
        } catch (const IndeterminateError& e) {
            CHECK(e.delta == 0.1);
        }
    }
    SUBCASE("inverted bracket is a config error") {
        SolverConfig config;
        config.delta_lo = 0.6;
        config.delta_hi = 0.5;
        CHECK_THROWS_AS(shooting::find_delta_star(params, config), std::invalid_argument);
    }
}

TEST_CASE("tangent error does not degrade as the bracket tightens") {
    const ModelParams params{2, 1.0};
    SolverConfig loose;
    loose.bisect_tol = 1e-6;
    SolverConfig tight;
    tight.bisect_tol = 1e-9;
    const double e_loose = shooting::find_delta_star(params, loose).tangent_error;
    const double e_tight = shooting::find_delta_star(params, tight).tangent_error;
    CHECK(e_tight <= e_loose + 1e-12);
}

TEST_CASE("an unreachable angle tolerance reports the achieved error") {
    const ModelParams params{2, 1.0};
    SolverConfig config;
    config.bisect_tol = 1e-2;   // far too wide for a tangential return
    config.angle_tol = 1e-18;
    try {
        shooting::find_delta_star(params, config);
        FAIL("expected NoConvergenceError");
    } catch (const NoConvergenceError& e) {
        CHECK(e.tangent_error > 1e-18);
    }
}

TEST_CASE("the search rejects invalid setups") {
    CHECK_THROWS_AS(shooting::find_delta_star({2, 0.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(shooting::find_delta_star({1, 1.0}, {}), std::invalid_argument);
    SolverConfig bad_step;
    bad_step.step = 0.0;
    CHECK_THROWS_AS(shooting::find_delta_star({2, 1.0}, bad_step), std::invalid_argument);
    SolverConfig zero_lo;
    zero_lo.delta_lo = 0.0;
    zero_lo.delta_hi = 0.5;
    CHECK_THROWS_AS(shooting::find_delta_star({2, 1.0}, zero_lo), std::invalid_argument);
}
