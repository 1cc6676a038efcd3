#ifndef LTORUS_LIMIT_MODEL_HPP
#define LTORUS_LIMIT_MODEL_HPP

#include <vector>

#include "ltorus/types.hpp"

namespace ltorus::limit {

// State of the small-height rescaled flow: xi = x/delta, rho = (r-delta)/delta,
// phi the tangent angle with xi' = cos(phi), rho' = sin(phi). cos_phi and
// sin_phi carry the trigonometric values at full relative precision; phi
// itself saturates at pi/2 in double once cos(phi) shrinks past ~1e-16.
struct LimitState {
    double t = 0.0;
    double xi = 0.0;
    double rho = 0.0;
    double phi = 0.0;
    double sin_phi = 0.0;
    double cos_phi = 1.0;
};

// cos^2(phi) (1+rho)^(2(n-1)), conserved along the limit flow with value 1.
double first_integral(const LimitState& state, int n);

// Integrates phi' = (n-1) cos(phi)/(1+rho), xi' = cos(phi), rho' = sin(phi)
// from (0, 0, 0). Returns every accepted step including the initial state.
std::vector<LimitState> integrate_limit(int n, double t_end, double step);

struct RescaleComparison {
    // max over aligned samples of max(|xi_full - xi_limit|, |rho_full - rho_limit|)
    double deviation = 0.0;
    double steepen_time = 0.0;    // first t with sin(phi) >= 0.9 in the limit flow
    double r_prime_at_T = 0.0;    // r'(delta * steepen_time) in the full flow
};

// Runs the full profile flow from (0, delta, 0) to s = delta*t_end, rescales,
// and measures the worst deviation from the limit trajectory. The full flow
// uses step delta*limit_step so samples align one-to-one.
RescaleComparison compare_with_full_system(double delta, const ModelParams& params,
                                           double t_end, double limit_step = 1e-3);

}  // namespace ltorus::limit

#endif
