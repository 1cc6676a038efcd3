#include "ltorus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "ltorus/ode.hpp"

namespace ltorus::geometry {

double mean_curvature(const ProfileState& state, const ModelParams& params) {
    if (!(state.r > 0.0)) throw std::domain_error("ltorus: mean curvature requires r > 0");
    return ode::curvature(state, params) - (params.n - 1) * std::cos(state.theta) / state.r;
}

double support_function(const ProfileState& state) {
    return -state.x * std::sin(state.theta) + state.r * std::cos(state.theta);
}

double lambda_residual(const ProfileState& state, const ModelParams& params) {
    return mean_curvature(state, params) + support_function(state) - params.lambda;
}

double sphere_radius(const ModelParams& params) {
    const double l = params.lambda;
    return 2.0 * params.n / (l + std::sqrt(l * l + 4.0 * params.n));
}

double cylinder_radius(const ModelParams& params) {
    const double l = params.lambda;
    return 2.0 * (params.n - 1) / (l + std::sqrt(l * l + 4.0 * (params.n - 1)));
}

double unit_sphere_area(int n) {
    if (n < 1) throw std::domain_error("ltorus: unit_sphere_area requires n >= 1");
    const double pi = std::acos(-1.0);
    // Gamma(n/2) by the half-integer recurrence.
    double gamma = n % 2 == 0 ? 1.0 : std::sqrt(pi);
    for (int k = n % 2 == 0 ? 2 : 1; k < n - 1; k += 2) gamma *= 0.5 * k;
    return 2.0 * std::pow(pi, 0.5 * n) / gamma;
}

GeometricSample sample(const ProfileState& state, const ModelParams& params) {
    GeometricSample g;
    g.state = state;
    g.kappa = ode::curvature(state, params);
    g.H = g.kappa - (params.n - 1) * std::cos(state.theta) / state.r;
    g.support = support_function(state);
    g.residual = g.H + g.support - params.lambda;
    return g;
}

namespace {

constexpr double kOrientEps = 1e-12;

int orient(const Point& a, const Point& b, const Point& c) {
    const double v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if (v > kOrientEps) return 1;
    if (v < -kOrientEps) return -1;
    return 0;
}

bool within_bbox(const Point& a, const Point& b, const Point& p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
    const int d1 = orient(p3, p4, p1);
    const int d2 = orient(p3, p4, p2);
    const int d3 = orient(p1, p2, p3);
    const int d4 = orient(p1, p2, p4);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && within_bbox(p3, p4, p1)) return true;
    if (d2 == 0 && within_bbox(p3, p4, p2)) return true;
    if (d3 == 0 && within_bbox(p1, p2, p3)) return true;
    if (d4 == 0 && within_bbox(p1, p2, p4)) return true;
    return false;
}

inline std::uint64_t cell_key(long ix, long iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
}

}  // namespace

bool simplicity_check(const std::vector<Point>& polyline) {
    const std::size_t m = polyline.size();
    if (m < 3) throw std::invalid_argument("ltorus: simplicity check needs at least 3 points");
    const std::size_t nseg = m - 1;
    const bool closed = polyline.front() == polyline.back();

    auto adjacent = [&](std::size_t i, std::size_t j) {
        const std::size_t d = i < j ? j - i : i - j;
        if (d <= 1) return true;
        return closed && d == nseg - 1;
    };

    double max_len = 0.0;
    for (std::size_t i = 0; i < nseg; ++i) {
        const double dx = polyline[i + 1][0] - polyline[i][0];
        const double dy = polyline[i + 1][1] - polyline[i][1];
        max_len = std::max(max_len, std::hypot(dx, dy));
    }
    if (max_len == 0.0) return true;
    const double cell = max_len;

    // Register each segment in every grid cell its bounding box touches, then
    // test pairs sharing a cell. An intersection point lies in some cell, and
    // both boxes cover that cell, so cell-local testing is exhaustive.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    entries.reserve(2 * nseg);
    for (std::size_t i = 0; i < nseg; ++i) {
        const Point& a = polyline[i];
        const Point& b = polyline[i + 1];
        const long x0 = static_cast<long>(std::floor(std::min(a[0], b[0]) / cell));
        const long x1 = static_cast<long>(std::floor(std::max(a[0], b[0]) / cell));
        const long y0 = static_cast<long>(std::floor(std::min(a[1], b[1]) / cell));
        const long y1 = static_cast<long>(std::floor(std::max(a[1], b[1]) / cell));
        for (long ix = x0; ix <= x1; ++ix)
            for (long iy = y0; iy <= y1; ++iy)
                entries.emplace_back(cell_key(ix, iy), static_cast<std::uint32_t>(i));
    }
    std::sort(entries.begin(), entries.end());

    std::size_t lo = 0;
    while (lo < entries.size()) {
        std::size_t hi = lo + 1;
        while (hi < entries.size() && entries[hi].first == entries[lo].first) ++hi;
        for (std::size_t a = lo; a < hi; ++a) {
            for (std::size_t b = a + 1; b < hi; ++b) {
                const std::size_t i = entries[a].second;
                const std::size_t j = entries[b].second;
                if (i == j || adjacent(i, j)) continue;
                if (segments_intersect(polyline[i], polyline[i + 1], polyline[j],
                                       polyline[j + 1]))
                    return false;
            }
        }
        lo = hi;
    }
    return true;
}

ClosedProfile build_closed_profile(const ProfileCurve& half, double angle_tol) {
    if (half.outcome.kind != EventKind::HitAxis)
        throw std::invalid_argument("ltorus: closed profile needs an axis-hitting half curve");
    if (half.states.size() < 3)
        throw std::invalid_argument("ltorus: half curve too short to close");

    const double theta_end = half.states.back().theta;
    const double pi = std::acos(-1.0);
    const double tangent_err = std::abs(std::cos(theta_end) + 1.0);
    const double top_joint = 2.0 * std::abs(pi - theta_end);
    const double bottom_joint = 2.0 * std::abs(half.states.front().theta);
    if (tangent_err > angle_tol)
        throw JointError("ltorus: terminal tangent off horizontal by " +
                             std::to_string(tangent_err) + " in cos(theta)",
                         tangent_err);
    if (top_joint > 2.0 * angle_tol || bottom_joint > 2.0 * angle_tol)
        throw JointError("ltorus: reflection joint mismatch of " +
                             std::to_string(std::max(top_joint, bottom_joint)) + " rad",
                         std::max(top_joint, bottom_joint));

    const std::size_t m = half.states.size();
    ClosedProfile closed;
    closed.joint_angles = {bottom_joint, top_joint};
    closed.points.reserve(2 * m - 1);
    closed.theta.reserve(2 * m - 1);
    for (const ProfileState& st : half.states) {
        if (!(st.r > 0.0)) throw SolverError("ltorus: half curve leaves the upper half plane");
        closed.points.push_back({st.x, st.r});
        closed.theta.push_back(st.theta);
    }
    closed.points.front()[0] = 0.0;  // launch is on the axis by construction
    closed.points[m - 1][0] = 0.0;   // snap the refined hit point
    for (std::size_t k = m - 1; k-- > 0;) {
        closed.points.push_back({-closed.points[k][0], closed.points[k][1]});
        closed.theta.push_back(-closed.theta[k]);
    }
    closed.points.back()[0] = 0.0;  // avoid -0.0 at the closing point

    if (!simplicity_check(closed.points))
        throw SimplicityError("ltorus: closed profile intersects itself");
    return closed;
}

ClosedProfile decimate_closed(const ClosedProfile& closed, int target_points) {
    if (target_points < 3)
        throw std::invalid_argument("ltorus: decimation needs at least 3 points");
    const std::size_t m = closed.points.size();
    if (m < 2 || closed.points.front() != closed.points.back())
        throw std::invalid_argument("ltorus: decimation needs a closed profile");
    if (closed.theta.size() != m)
        throw std::invalid_argument("ltorus: decimation needs a tangent per point");

    std::vector<double> cum(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        const Point& a = closed.points[i - 1];
        const Point& b = closed.points[i];
        cum[i] = cum[i - 1] + std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    const double total = cum.back();
    if (!(total > 0.0)) throw std::invalid_argument("ltorus: profile has no extent");

    ClosedProfile out;
    out.joint_angles = closed.joint_angles;
    std::size_t prev = static_cast<std::size_t>(-1);
    for (int k = 0; k < target_points; ++k) {
        const double target = total * k / target_points;
        const std::size_t idx =
            std::lower_bound(cum.begin(), cum.end(), target) - cum.begin();
        if (idx == prev || idx + 1 >= m) continue;
        prev = idx;
        out.points.push_back(closed.points[idx]);
        out.theta.push_back(closed.theta[idx]);
    }
    out.points.push_back(out.points.front());
    out.theta.push_back(out.theta.front());
    if (out.points.size() < 4)
        throw std::invalid_argument("ltorus: decimation collapsed the profile");
    return out;
}

namespace {

double gaussian_weight(const Point& p, int n) {
    return std::pow(p[1], n - 1) * std::exp(-0.5 * (p[0] * p[0] + p[1] * p[1]));
}

double revolve_quadrature(const ClosedProfile& closed, const ModelParams& params,
                          const std::vector<double>* factor) {
    const std::size_t m = closed.points.size();
    if (m < 2) throw std::invalid_argument("ltorus: quadrature needs at least 2 points");
    if (factor && factor->size() != m)
        throw std::invalid_argument("ltorus: per-point factor size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const Point& a = closed.points[i];
        const Point& b = closed.points[i + 1];
        const double ds = std::hypot(b[0] - a[0], b[1] - a[1]);
        double fa = gaussian_weight(a, params.n);
        double fb = gaussian_weight(b, params.n);
        if (factor) {
            fa *= (*factor)[i];
            fb *= (*factor)[i + 1];
        }
        acc += 0.5 * (fa + fb) * ds;
    }
    return unit_sphere_area(params.n) * acc;
}

}  // namespace

double weighted_area(const ClosedProfile& closed, const ModelParams& params) {
    return revolve_quadrature(closed, params, nullptr);
}

double weighted_volume(const ClosedProfile& closed, const ModelParams& params) {
    if (closed.theta.size() != closed.points.size())
        throw std::invalid_argument("ltorus: weighted volume needs a tangent per point");
    std::vector<double> support(closed.points.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        ProfileState st;
        st.x = closed.points[i][0];
        st.r = closed.points[i][1];
        st.theta = closed.theta[i];
        support[i] = support_function(st);
    }
    return revolve_quadrature(closed, params, &support);
}

}  // namespace ltorus::geometry
