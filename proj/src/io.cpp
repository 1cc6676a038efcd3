#include "ltorus/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ltorus::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* kProfileHeader = "s,x,r,theta,kappa,H,support,residual";

}  // namespace

void write_profile_csv(std::ostream& os, const ProfileCurve& curve) {
    os << kProfileHeader << '\n';
    for (const ProfileState& st : curve.states) {
        const geometry::GeometricSample g = geometry::sample(st, curve.params);
        os << format_double(st.s) << ',' << format_double(st.x) << ',' << format_double(st.r)
           << ',' << format_double(st.theta) << ',' << format_double(g.kappa) << ','
           << format_double(g.H) << ',' << format_double(g.support) << ','
           << format_double(g.residual) << '\n';
    }
}

std::vector<std::array<double, 8>> read_profile_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kProfileHeader)
        throw std::runtime_error("ltorus: profile CSV header mismatch");
    std::vector<std::array<double, 8>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<double, 8> row{};
        std::size_t pos = 0;
        for (int c = 0; c < 8; ++c) {
            const std::size_t next = line.find(',', pos);
            if ((next == std::string::npos) != (c == 7))
                throw std::runtime_error("ltorus: profile CSV expects 8 columns");
            bool ok = true;
            try {
                std::size_t used = 0;
                row[c] = std::stod(line.substr(pos, next - pos), &used);
                ok = used > 0;
            } catch (const std::logic_error&) {
                ok = false;
            }
            if (!ok) throw std::runtime_error("ltorus: profile CSV has a non-numeric cell");
            pos = next + 1;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_closed_profile_csv(std::ostream& os, const geometry::ClosedProfile& closed) {
    os << "x,r" << '\n';
    for (const geometry::Point& p : closed.points)
        os << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
    if (!closed.points.empty() && closed.points.front() != closed.points.back()) {
        const geometry::Point& p = closed.points.front();
        os << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
    }
}

nlohmann::ordered_json outcome_json(const ProfileCurve& curve) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(curve.outcome.kind);
    j["n"] = curve.params.n;
    j["lambda"] = curve.params.lambda;
    j["delta"] = curve.delta;
    j["s1"] = curve.outcome.s1;
    const ProfileState& t = curve.outcome.terminal;
    j["terminal"] = {{"s", t.s}, {"x", t.x}, {"r", t.r}, {"theta", t.theta}};
    j["x_prime_terminal"] = curve.outcome.x_prime_terminal;
    if (curve.outcome.kind == EventKind::HitAxis)
        j["axis_radius"] = curve.outcome.axis_radius();
    if (curve.outcome.kind == EventKind::HorizontalTangent)
        j["tangent_x"] = curve.outcome.tangent_x();
    j["steps"] = curve.states.size();
    return j;
}

namespace {

nlohmann::ordered_json bound_json(const shooting::BoundCheck& check) {
    return {{"pass", check.pass}, {"measured", check.measured}, {"limit", check.limit}};
}

}  // namespace

nlohmann::ordered_json report_json(const RunReport& report) {
    const shooting::TorusSolution& sol = report.solution;
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["params"] = {{"n", report.params.n}, {"lambda", report.params.lambda}};
    j["config"] = {{"step", report.config.step},
                   {"event_tol", report.config.event_tol},
                   {"bisect_tol", report.config.bisect_tol},
                   {"angle_tol", report.config.angle_tol},
                   {"max_arclength", report.config.arclength_budget(report.params)},
                   {"bound_slack", report.config.bound_slack},
                   {"grid_points", report.config.grid_points}};
    j["delta_star"] = sol.delta_star;
    j["r_star"] = sol.r_star;
    j["s1"] = sol.half_profile.outcome.s1;
    j["bracket_width"] = sol.bracket_width;
    j["tangent_error"] = sol.tangent_error;
    j["residual_max"] = sol.residual_max;
    j["residual_max_half_step"] = sol.residual_max_half_step;
    j["bound_report"] = {{"radius_bound", bound_json(sol.bound_report.radius_bound)},
                         {"height_bound", bound_json(sol.bound_report.height_bound)},
                         {"radius_monotone", bound_json(sol.bound_report.radius_monotone)},
                         {"single_turn", bound_json(sol.bound_report.single_turn)},
                         {"all_pass", sol.bound_report.all_pass()}};
    j["joint_angles"] = sol.closed_profile.joint_angles;
    j["profile_simple"] = true;  // construction throws otherwise
    j["closed_points"] = sol.closed_profile.points.size();
    j["weighted_area"] = report.weighted_area;
    j["weighted_volume"] = report.weighted_volume;

    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const shooting::BracketSample& s : sol.history)
        hist.push_back({{"delta", s.delta}, {"class", shooting::to_string(s.cls)}});
    j["bracket_history"] = hist;

    nlohmann::ordered_json trans = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : sol.transitions) trans.push_back({lo, hi});
    j["transition_brackets"] = trans;

    j["artifacts"] = {{"profile_csv", report.profile_path.empty()
                                          ? nlohmann::ordered_json(nullptr)
                                          : nlohmann::ordered_json(report.profile_path)},
                      {"mesh_obj", report.mesh_path.empty()
                                       ? nlohmann::ordered_json(nullptr)
                                       : nlohmann::ordered_json(report.mesh_path)}};
    return j;
}

namespace {

void write_vertex(std::ostream& os, double x, double y, double z) {
    os << "v " << format_double(x) << ' ' << format_double(y) << ' ' << format_double(z) << '\n';
}

void write_face(std::ostream& os, long a, long b, long c) {
    os << "f " << a << ' ' << b << ' ' << c << '\n';
}

}  // namespace

void write_torus_obj(std::ostream& os, const geometry::ClosedProfile& closed,
                     int angular_segments) {
    const long k = angular_segments;
    if (k < 3) throw std::invalid_argument("ltorus: mesh needs at least 3 angular segments");
    if (closed.points.size() < 4 || closed.points.front() != closed.points.back())
        throw std::invalid_argument("ltorus: torus mesh needs a closed profile");
    const long m = static_cast<long>(closed.points.size()) - 1;

    const double two_pi = 2.0 * std::acos(-1.0);
    for (long i = 0; i < m; ++i) {
        const geometry::Point& p = closed.points[i];
        for (long j = 0; j < k; ++j) {
            const double a = two_pi * j / k;
            write_vertex(os, p[0], p[1] * std::cos(a), p[1] * std::sin(a));
        }
    }
    auto id = [&](long i, long j) { return (i % m) * k + (j % k) + 1; };
    for (long i = 0; i < m; ++i) {
        for (long j = 0; j < k; ++j) {
            write_face(os, id(i, j), id(i, j + 1), id(i + 1, j + 1));
            write_face(os, id(i, j), id(i + 1, j + 1), id(i + 1, j));
        }
    }
}

void write_revolved_obj(std::ostream& os, const std::vector<geometry::Point>& polyline,
                        int angular_segments) {
    const long k = angular_segments;
    if (k < 3) throw std::invalid_argument("ltorus: mesh needs at least 3 angular segments");
    const long m = static_cast<long>(polyline.size());
    if (m < 3) throw std::invalid_argument("ltorus: revolved mesh needs at least 3 points");
    if (std::abs(polyline.front()[1]) > 1e-9 || std::abs(polyline.back()[1]) > 1e-9)
        throw std::invalid_argument("ltorus: revolved mesh needs endpoints on the axis");
    for (long i = 1; i + 1 < m; ++i)
        if (!(polyline[i][1] > 0.0))
            throw std::invalid_argument("ltorus: interior points must have r > 0");

    const double two_pi = 2.0 * std::acos(-1.0);
    write_vertex(os, polyline.front()[0], 0.0, 0.0);
    for (long i = 1; i + 1 < m; ++i) {
        for (long j = 0; j < k; ++j) {
            const double a = two_pi * j / k;
            write_vertex(os, polyline[i][0], polyline[i][1] * std::cos(a),
                         polyline[i][1] * std::sin(a));
        }
    }
    const long pole_start = 1;
    const long pole_end = (m - 2) * k + 2;
    write_vertex(os, polyline.back()[0], 0.0, 0.0);

    auto id = [&](long i, long j) { return (i - 1) * k + (j % k) + 2; };
    for (long j = 0; j < k; ++j) write_face(os, pole_start, id(1, j + 1), id(1, j));
    for (long i = 1; i + 2 < m; ++i) {
        for (long j = 0; j < k; ++j) {
            write_face(os, id(i, j), id(i, j + 1), id(i + 1, j + 1));
            write_face(os, id(i, j), id(i + 1, j + 1), id(i + 1, j));
        }
    }
    for (long j = 0; j < k; ++j) write_face(os, id(m - 2, j), id(m - 2, j + 1), pole_end);
}

MeshStats obj_stats(std::istream& is) {
    MeshStats stats;
    struct EdgeUse {
        int count = 0;
        int balance = 0;
    };
    std::unordered_map<std::uint64_t, EdgeUse> edges;
    long max_index = 0;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            ++stats.vertices;
        } else if (tag == "f") {
            long a = 0, b = 0, c = 0;
            if (!(ls >> a >> b >> c))
                throw std::runtime_error("ltorus: mesh stats expect triangular faces");
            long extra;
            if (ls >> extra) throw std::runtime_error("ltorus: mesh stats expect triangular faces");
            for (long v : {a, b, c}) {
                if (v < 1) throw std::runtime_error("ltorus: face index out of range");
                max_index = std::max(max_index, v);
            }
            ++stats.faces;
            const long tri[3] = {a, b, c};
            for (int e = 0; e < 3; ++e) {
                const long u = tri[e];
                const long v = tri[(e + 1) % 3];
                if (u == v) throw std::runtime_error("ltorus: degenerate face edge");
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                    static_cast<std::uint64_t>(std::max(u, v));
                EdgeUse& use = edges[key];
                ++use.count;
                use.balance += u < v ? 1 : -1;
            }
        }
    }
    if (max_index > stats.vertices)
        throw std::runtime_error("ltorus: face index exceeds vertex count");
    stats.edges = static_cast<long>(edges.size());
    stats.watertight = !edges.empty();
    stats.oriented = !edges.empty();
    for (const auto& [key, use] : edges) {
        if (use.count != 2) stats.watertight = false;
        if (use.count != 2 || use.balance != 0) stats.oriented = false;
    }
    stats.euler_characteristic = stats.vertices - stats.edges + stats.faces;
    return stats;
}

}  // namespace ltorus::io
