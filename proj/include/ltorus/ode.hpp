#ifndef LTORUS_ODE_HPP
#define LTORUS_ODE_HPP

#include "ltorus/types.hpp"

namespace ltorus::ode {

// Signed curvature of the profile curve at a state, which is also the turning
// rate theta' of the first-order system:
//   kappa = x sin(theta) + ((n-1)/r - r) cos(theta) + lambda.
double curvature(const ProfileState& state, const ModelParams& params);

// One classical RK4 step of size h for x' = cos(theta), r' = sin(theta),
// theta' = kappa.
ProfileState rk4_step(const ProfileState& state, const ModelParams& params, double h);

// Integrate from (x, r, theta)(0) = (0, delta, 0) until the first event:
// axis hit, horizontal tangent, radial singularity, or budget exhaustion.
// Events are detected by per-step sign change and refined by bisection on a
// partial step from the last accepted state. Events at s <= event_tol are
// ignored (the launch itself is a horizontal tangent).
ProfileCurve integrate_profile(double delta, const ModelParams& params, const SolverConfig& config);

struct OrderCheckOptions {
    double s_end = 0.25;     // end of the smooth sub-arc, well before any event
    double base_step = 5e-3; // coarsest step of the Richardson ladder
    double ratio = 2.0;      // step refinement ratio, must be > 1
};

// Observed convergence order from integrating the sub-arc at h, h/2, h/4 and
// comparing against the h/8 solution. A 4th-order scheme should land within
// 0.5 of 4.
double integration_order_check(const ModelParams& params, double delta,
                               const OrderCheckOptions& opts = {});

}  // namespace ltorus::ode

#endif
