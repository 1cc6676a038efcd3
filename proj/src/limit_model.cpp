#include "ltorus/limit_model.hpp"

#include <cmath>
#include <limits>

#include "ltorus/ode.hpp"

namespace ltorus::limit {

double first_integral(const LimitState& state, int n) {
    return state.cos_phi * state.cos_phi * std::pow(1.0 + state.rho, 2 * (n - 1));
}

namespace {

// The flow is integrated in the co-angle psi = pi/2 - phi. phi crowds pi/2
// where double spacing is 1e-16 absolute, while psi keeps full relative
// precision as it decays; the conserved quantity reads it through sin(psi).
struct CoState {
    double xi, rho, psi;
};

struct CoDeriv {
    double dxi, drho, dpsi;
};

inline CoDeriv rhs(const CoState& y, int n) {
    const double sp = std::sin(y.psi);
    const double cp = std::cos(y.psi);
    return {sp, cp, -(n - 1) * sp / (1.0 + y.rho)};
}

inline CoState advance(const CoState& y, const CoDeriv& d, double h) {
    return {y.xi + h * d.dxi, y.rho + h * d.drho, y.psi + h * d.dpsi};
}

CoState rk4(const CoState& y, int n, double h) {
    const CoDeriv k1 = rhs(y, n);
    const CoDeriv k2 = rhs(advance(y, k1, 0.5 * h), n);
    const CoDeriv k3 = rhs(advance(y, k2, 0.5 * h), n);
    const CoDeriv k4 = rhs(advance(y, k3, h), n);
    return {y.xi + h / 6.0 * (k1.dxi + 2.0 * (k2.dxi + k3.dxi) + k4.dxi),
            y.rho + h / 6.0 * (k1.drho + 2.0 * (k2.drho + k3.drho) + k4.drho),
            y.psi + h / 6.0 * (k1.dpsi + 2.0 * (k2.dpsi + k3.dpsi) + k4.dpsi)};
}

LimitState to_state(double t, const CoState& y) {
    const double half_pi = 0.5 * std::acos(-1.0);
    LimitState st;
    st.t = t;
    st.xi = y.xi;
    st.rho = y.rho;
    st.phi = half_pi - y.psi;
    st.sin_phi = std::cos(y.psi);
    st.cos_phi = std::sin(y.psi);
    return st;
}

}  // namespace

std::vector<LimitState> integrate_limit(int n, double t_end, double step) {
    if (n < 2) throw std::domain_error("ltorus: limit flow requires n >= 2");
    if (!(t_end > 0.0)) throw std::domain_error("ltorus: t_end must be > 0");
    if (!(step > 0.0)) throw std::domain_error("ltorus: step must be > 0");

    std::vector<LimitState> traj;
    traj.reserve(static_cast<std::size_t>(t_end / step) + 2);

    CoState y{0.0, 0.0, 0.5 * std::acos(-1.0)};
    double t = 0.0;
    traj.push_back(LimitState{});  // launch data is exact, skip the conversion
    while (t < t_end) {
        double h = step;
        if (t + h >= t_end) h = t_end - t;
        y = rk4(y, n, h);
        t = t + h >= t_end ? t_end : t + h;
        if (!(1.0 + y.rho > 0.0))
            throw std::domain_error("ltorus: limit flow reached rho <= -1");
        traj.push_back(to_state(t, y));
    }
    return traj;
}

RescaleComparison compare_with_full_system(double delta, const ModelParams& params,
                                           double t_end, double limit_step) {
    params.validate_for_shot();
    if (!(delta > 0.0 && delta <= 1e-2))
        throw std::domain_error("ltorus: rescale comparison expects 0 < delta <= 1e-2");
    if (!(t_end > 0.0) || !(limit_step > 0.0))
        throw std::domain_error("ltorus: t_end and limit_step must be > 0");

    const std::vector<LimitState> traj = integrate_limit(params.n, t_end, limit_step);

    RescaleComparison cmp;
    cmp.r_prime_at_T = std::numeric_limits<double>::quiet_NaN();
    bool steepened = false;

    ProfileState full{0.0, 0.0, delta, 0.0};
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (k > 0) {
            const double dt = traj[k].t - traj[k - 1].t;
            full = ode::rk4_step(full, params, delta * dt);
        }
        const double xi = full.x / delta;
        const double rho = (full.r - delta) / delta;
        cmp.deviation = std::max(cmp.deviation, std::abs(xi - traj[k].xi));
        cmp.deviation = std::max(cmp.deviation, std::abs(rho - traj[k].rho));
        if (!steepened && traj[k].sin_phi >= 0.9) {
            steepened = true;
            cmp.steepen_time = traj[k].t;
            cmp.r_prime_at_T = std::sin(full.theta);
        }
    }
    return cmp;
}

}  // namespace ltorus::limit
