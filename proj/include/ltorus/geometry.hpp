#ifndef LTORUS_GEOMETRY_HPP
#define LTORUS_GEOMETRY_HPP

#include <array>
#include <vector>

#include "ltorus/types.hpp"

namespace ltorus::geometry {

// Mean curvature of the revolved hypersurface, H = kappa - (n-1) cos(theta) / r.
// Sign convention follows the unit normal N = (-r', x' a).
double mean_curvature(const ProfileState& state, const ModelParams& params);

// Support function <X, N> = -x sin(theta) + r cos(theta).
double support_function(const ProfileState& state);

// Defect of the defining equation: H + <X, N> - lambda. Vanishes identically
// along exact solutions.
double lambda_residual(const ProfileState& state, const ModelParams& params);

// Radius of the round-sphere solution, positive root of a^2 + lambda a - n = 0.
double sphere_radius(const ModelParams& params);

// Radius of the cylinder solution, positive root of a^2 + lambda a - (n-1) = 0.
double cylinder_radius(const ModelParams& params);

// Surface area of the unit (n-1)-sphere in R^n.
double unit_sphere_area(int n);

struct GeometricSample {
    ProfileState state;
    double kappa = 0.0;
    double H = 0.0;
    double support = 0.0;
    double residual = 0.0;
};

GeometricSample sample(const ProfileState& state, const ModelParams& params);

using Point = std::array<double, 2>;  // (x, r)

// Closed profile polyline: the solved half-curve followed by its mirror image
// across the r-axis, reversed. First and last points coincide.
struct ClosedProfile {
    std::vector<Point> points;
    std::vector<double> theta;           // tangent angle per point
    std::array<double, 2> joint_angles;  // tangent mismatch at launch and far joint
};

// Reflects a HitAxis half-profile into a closed simple polyline. Throws
// JointError when the terminal tangent is off horizontal by more than
// angle_tol, SimplicityError when the closed polyline self-intersects.
ClosedProfile build_closed_profile(const ProfileCurve& half, double angle_tol);

// True iff no two non-adjacent segments of the polyline intersect. Segments
// sharing an endpoint (including the closing wrap) are exempt.
bool simplicity_check(const std::vector<Point>& polyline);

// Subsamples the closed polyline to about target_points vertices at uniform
// arc-length spacing, keeping the launch joint and the closing duplicate.
// Meant for mesh export; the dense profile stays authoritative.
ClosedProfile decimate_closed(const ClosedProfile& closed, int target_points);

// Gaussian-weighted area of the revolved hypersurface: trapezoidal quadrature
// of r^(n-1) exp(-(x^2+r^2)/2) over arc length, scaled by unit_sphere_area(n).
double weighted_area(const ClosedProfile& closed, const ModelParams& params);

// Same quadrature weighted by the support function <X, N>.
double weighted_volume(const ClosedProfile& closed, const ModelParams& params);

}  // namespace ltorus::geometry

#endif
