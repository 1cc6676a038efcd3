#ifndef LTORUS_SHOOTING_HPP
#define LTORUS_SHOOTING_HPP

#include <utility>
#include <vector>

#include "ltorus/geometry.hpp"
#include "ltorus/types.hpp"

namespace ltorus::shooting {

enum class Classification { Hit, Miss, Indeterminate };

const char* to_string(Classification c);

// HitAxis -> Hit, HorizontalTangent -> Miss, anything else -> Indeterminate.
Classification classify_shot(const ShotOutcome& outcome);

struct BoundCheck {
    bool pass = false;
    double measured = 0.0;
    double limit = 0.0;
};

struct BoundReport {
    BoundCheck radius_bound;     // max r against sqrt(n-1) + pi/(2 lambda)
    BoundCheck height_bound;     // max x against pi/(2 lambda)
    BoundCheck radius_monotone;  // measured: min forward difference of r
    BoundCheck single_turn;      // measured: sign changes of x' on (0, s1)
    bool all_pass() const;
};

// Checks the a-priori bounds on a terminated shot. Reports, never throws.
BoundReport verify_bounds(const ProfileCurve& curve, const ModelParams& params,
                          double slack = 1e-6);

struct BracketSample {
    double delta = 0.0;
    Classification cls = Classification::Indeterminate;
};

struct BracketScan {
    double lo = 0.0;  // classifies Hit
    double hi = 0.0;  // classifies Miss
    std::vector<BracketSample> samples;
    // Adjacent (Hit, Miss) grid pairs. More than one means the Hit set is not
    // an interval at this resolution; the lowest pair is the chosen bracket.
    std::vector<std::pair<double, double>> transitions;
};

// Scans a geometric grid of launch heights below the upward-cylinder
// threshold and returns the lowest Hit/Miss transition. Throws BracketError
// when the grid contains no such pair.
BracketScan establish_bracket(const ModelParams& params, const SolverConfig& config);

struct TorusSolution {
    double delta_star = 0.0;
    double r_star = 0.0;
    ProfileCurve half_profile;
    geometry::ClosedProfile closed_profile;
    double residual_max = 0.0;            // at the configured step
    double residual_max_half_step = 0.0;  // rerun at half step
    BoundReport bound_report;
    double bracket_width = 0.0;
    double tangent_error = 0.0;  // |x'(s1) + 1| at delta_star
    std::vector<BracketSample> history;
    // Hit/Miss transitions seen by the grid scan; more than one flags a
    // non-interval Hit set (the lowest was solved).
    std::vector<std::pair<double, double>> transitions;
};

// Bisects on outcome type between a Hit and a Miss launch height until the
// bracket is narrower than bisect_tol, then validates the returned curve:
// terminal tangent within angle_tol of horizontal, all bounds, closed profile
// simple. Throws BracketError, IndeterminateError, NoConvergenceError,
// JointError or SimplicityError accordingly.
TorusSolution find_delta_star(const ModelParams& params, const SolverConfig& config);

}  // namespace ltorus::shooting

#endif
