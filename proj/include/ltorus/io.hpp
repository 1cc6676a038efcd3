#ifndef LTORUS_IO_HPP
#define LTORUS_IO_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltorus/geometry.hpp"
#include "ltorus/shooting.hpp"
#include "ltorus/types.hpp"

namespace ltorus::io {

// Shortest representation that round-trips a double, C locale.
std::string format_double(double v);

// Columns: s,x,r,theta,kappa,H,support,residual. One row per accepted step.
void write_profile_csv(std::ostream& os, const ProfileCurve& curve);

// Parses the profile CSV back into rows of 8 columns. Throws std::runtime_error
// on malformed input.
std::vector<std::array<double, 8>> read_profile_csv(std::istream& is);

// Columns: x,r. The first point is repeated at the end to mark closure.
void write_closed_profile_csv(std::ostream& os, const geometry::ClosedProfile& closed);

// Single-line JSON describing a shot outcome.
nlohmann::ordered_json outcome_json(const ProfileCurve& curve);

struct RunReport {
    ModelParams params;
    SolverConfig config;
    shooting::TorusSolution solution;
    double weighted_area = 0.0;
    double weighted_volume = 0.0;
    std::string profile_path;  // empty when no CSV was written
    std::string mesh_path;
    double duration_seconds = 0.0;  // reported on stderr, never serialized
};

nlohmann::ordered_json report_json(const RunReport& report);

// Triangulated surface of revolution for a closed profile (torus topology).
// Faces wind so their normals match the profile normal (-r', x' a).
void write_torus_obj(std::ostream& os, const geometry::ClosedProfile& closed,
                     int angular_segments);

// Revolves an open polyline whose endpoints lie on the axis (r = 0); the two
// endpoint rings collapse to pole vertices (sphere topology).
void write_revolved_obj(std::ostream& os, const std::vector<geometry::Point>& polyline,
                        int angular_segments);

struct MeshStats {
    long vertices = 0;
    long edges = 0;
    long faces = 0;
    bool watertight = false;  // every edge shared by exactly two faces
    bool oriented = false;    // each undirected edge traversed once per direction
    long euler_characteristic = 0;
};

MeshStats obj_stats(std::istream& is);

}  // namespace ltorus::io

#endif
