#ifndef LTORUS_TYPES_HPP
#define LTORUS_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltorus {

// One sample of the profile curve. The tangent is carried as an angle, so the
// unit-speed constraint cos^2 + sin^2 = 1 holds identically and the system
// stays regular at horizontal tangents.
struct ProfileState {
    double s = 0.0;      // arc length
    double x = 0.0;      // axial coordinate
    double r = 0.0;      // radial coordinate, > 0
    double theta = 0.0;  // tangent angle: x' = cos(theta), r' = sin(theta)

    double x_prime() const { return std::cos(theta); }
    double r_prime() const { return std::sin(theta); }
};

struct ModelParams {
    int n = 2;            // hypersurface dimension, >= 2
    double lambda = 1.0;  // constant of the defining equation <X,N> + H = lambda

    void validate_for_shot() const {
        if (n < 2) throw std::invalid_argument("ltorus: n must be an integer >= 2");
        if (!(lambda >= 0.0)) throw std::invalid_argument("ltorus: lambda must be >= 0 for single shots");
    }
    void validate_for_search() const {
        if (n < 2) throw std::invalid_argument("ltorus: n must be an integer >= 2");
        if (!(lambda > 0.0)) throw std::invalid_argument("ltorus: torus search requires lambda > 0");
    }
};

// Radius threshold below which a shot with horizontal initial tangent still
// bends upwards: the positive root of r^2 - lambda*r - (n-1) = 0.
inline double upward_threshold(const ModelParams& p) {
    return 0.5 * (std::sqrt(p.lambda * p.lambda + 4.0 * (p.n - 1)) + p.lambda);
}

struct SolverConfig {
    double step = 1e-4;           // base arc-length step of the integrator
    double event_tol = 1e-10;     // event localization tolerance in s
    double max_arclength = 0.0;   // integration budget; 0 = derive from params
    double r_floor = 1e-8;        // radius below which a shot is declared singular
    double delta_lo = 0.0;        // initial search bracket; (0,0) = establish by grid scan
    double delta_hi = 0.0;
    double bisect_tol = 1e-9;     // termination tolerance on the bracket width
    double angle_tol = 1e-4;      // tolerance on |x'(s1) + 1| at the returned solution
    double residual_tol = 1e-8;   // admissible max |H + <X,N> - lambda| over samples
    double bound_slack = 1e-6;    // absolute slack on the a-priori bound checks
    int grid_points = 48;         // delta grid resolution for bracket establishment
    int profile_segments = 512;   // profile resampling count for mesh export
    int angular_segments = 128;   // angular resolution for mesh export
    int jobs = 1;                 // concurrent shots during the grid scan

    void validate() const {
        if (!(step > 0.0)) throw std::invalid_argument("ltorus: step must be > 0");
        if (!(event_tol > 0.0)) throw std::invalid_argument("ltorus: event_tol must be > 0");
        if (!(max_arclength >= 0.0)) throw std::invalid_argument("ltorus: max_arclength must be >= 0");
        if (!(r_floor > 0.0)) throw std::invalid_argument("ltorus: r_floor must be > 0");
        if (!(bisect_tol > 0.0)) throw std::invalid_argument("ltorus: bisect_tol must be > 0");
        if (!(angle_tol > 0.0)) throw std::invalid_argument("ltorus: angle_tol must be > 0");
        if (delta_lo != 0.0 || delta_hi != 0.0) {
            if (!(delta_lo <= delta_hi)) throw std::invalid_argument("ltorus: delta bracket requires lo <= hi");
            if (!(delta_lo > 0.0)) throw std::invalid_argument("ltorus: delta bracket must be positive");
        }
        if (grid_points < 1) throw std::invalid_argument("ltorus: grid_points must be >= 1");
        if (profile_segments < 3) throw std::invalid_argument("ltorus: profile_segments must be >= 3");
        if (angular_segments < 3) throw std::invalid_argument("ltorus: angular_segments must be >= 3");
        if (jobs < 1) throw std::invalid_argument("ltorus: jobs must be >= 1");
    }

    // Generous multiple of the a-priori diameter bound sqrt(n-1) + pi/(2 lambda).
    // For lambda = 0 comparison shots the bound degenerates, so only the
    // dimensional part is kept.
    double arclength_budget(const ModelParams& p) const {
        if (max_arclength > 0.0) return max_arclength;
        const double diam = std::sqrt(static_cast<double>(p.n - 1)) +
                            (p.lambda > 0.0 ? M_PI / (2.0 * p.lambda) : 0.0) + 1.0;
        return 50.0 * diam;
    }
};

enum class EventKind {
    HitAxis,            // x returned to 0
    HorizontalTangent,  // tangent became (1,0) or (-1,0) at x > 0
    RadialSingularity,  // r fell below r_floor
    BudgetExhausted,    // arc length exceeded the budget
};

std::string to_string(EventKind kind);

struct ShotOutcome {
    EventKind kind = EventKind::BudgetExhausted;
    double s1 = 0.0;            // arc length of the first event
    ProfileState terminal;      // refined state at s1
    double x_prime_terminal = 1.0;  // cos(theta) at s1
    int cos_sign = 1;           // sign of cos(theta) at a horizontal tangent

    // Event payloads: terminal radius for an axis hit, terminal abscissa for
    // a horizontal tangent.
    double axis_radius() const { return terminal.r; }
    double tangent_x() const { return terminal.x; }
};

// Dense trajectory of one shot together with its parameters and termination
// record. states holds every accepted step plus the refined terminal state.
struct ProfileCurve {
    ModelParams params;
    double delta = 0.0;
    double step = 0.0;
    std::vector<ProfileState> states;
    ShotOutcome outcome;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BracketError : SolverError {
    using SolverError::SolverError;
};

struct IndeterminateError : SolverError {
    double delta;
    IndeterminateError(const std::string& msg, double d) : SolverError(msg), delta(d) {}
};

struct NoConvergenceError : SolverError {
    double tangent_error;
    NoConvergenceError(const std::string& msg, double err) : SolverError(msg), tangent_error(err) {}
};

struct JointError : SolverError {
    double mismatch;
    JointError(const std::string& msg, double m) : SolverError(msg), mismatch(m) {}
};

struct SimplicityError : SolverError {
    using SolverError::SolverError;
};

}  // namespace ltorus

#endif
