// Command-line front end: shoot a single profile curve, solve for the closed
// torus profile, export a revolved mesh, or run the verification suites.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ltorus/geometry.hpp"
#include "ltorus/io.hpp"
#include "ltorus/limit_model.hpp"
#include "ltorus/ode.hpp"
#include "ltorus/shooting.hpp"
#include "ltorus/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitConvergence = 4;

struct Options {
    int n = 2;
    double lambda = 1.0;
    double delta = 0.0;
    ltorus::SolverConfig config;
    std::string profile_out;
    std::string mesh_out;
    int segments = 128;
    long seed = 0;  // reserved; the solver is deterministic
};

void add_model_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--n", opt.n, "Hypersurface dimension (>= 2)");
    cmd->add_option("--lambda", opt.lambda, "Constant of the defining equation");
    cmd->add_option("--step", opt.config.step, "Integrator arc-length step");
    cmd->add_option("--event-tol", opt.config.event_tol, "Event localization tolerance");
    cmd->add_option("--max-arclength", opt.config.max_arclength,
                    "Integration budget (0 derives it from the bounds)");
}

void add_search_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--bisect-tol", opt.config.bisect_tol, "Bracket width at which bisection stops");
    cmd->add_option("--angle-tol", opt.config.angle_tol, "Tolerance on |x'(s1) + 1|");
    cmd->add_option("--delta-lo", opt.config.delta_lo, "Lower bracket end (skips the grid scan)");
    cmd->add_option("--delta-hi", opt.config.delta_hi, "Upper bracket end");
    cmd->add_option("--jobs", opt.config.jobs, "Concurrent shots during the grid scan");
    cmd->add_option("--seed", opt.seed, "Reserved; accepted and ignored");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + path + " for writing");
    return os;
}

int run_shoot(const Options& opt) {
    ltorus::ModelParams params{opt.n, opt.lambda};
    const ltorus::ProfileCurve curve = ltorus::ode::integrate_profile(opt.delta, params, opt.config);
    if (!opt.profile_out.empty()) {
        std::ofstream os = open_output(opt.profile_out);
        ltorus::io::write_profile_csv(os, curve);
        if (!os) throw std::ios_base::failure("write failed: " + opt.profile_out);
    }
    std::cout << ltorus::io::outcome_json(curve).dump() << '\n';
    return kExitOk;
}

ltorus::io::RunReport solve_report(const Options& opt) {
    ltorus::ModelParams params{opt.n, opt.lambda};
    const auto started = std::chrono::steady_clock::now();
    ltorus::io::RunReport report;
    report.params = params;
    report.config = opt.config;
    report.solution = ltorus::shooting::find_delta_star(params, opt.config);
    report.weighted_area = ltorus::geometry::weighted_area(report.solution.closed_profile, params);
    report.weighted_volume =
        ltorus::geometry::weighted_volume(report.solution.closed_profile, params);
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

int run_solve(const Options& opt) {
    ltorus::io::RunReport report = solve_report(opt);
    if (!opt.profile_out.empty()) {
        std::ofstream os = open_output(opt.profile_out);
        ltorus::io::write_closed_profile_csv(os, report.solution.closed_profile);
        if (!os) throw std::ios_base::failure("write failed: " + opt.profile_out);
        report.profile_path = opt.profile_out;
    }
    if (report.solution.transitions.size() > 1)
        std::cerr << "warning: " << report.solution.transitions.size()
                  << " Hit/Miss transitions on the grid; solved the lowest\n";
    std::cerr << "solved n=" << opt.n << " lambda=" << opt.lambda << " in "
              << report.duration_seconds << " s\n";
    std::cout << ltorus::io::report_json(report).dump(2) << '\n';
    return report.solution.bound_report.all_pass() ? kExitOk : kExitProperty;
}

int run_mesh(const Options& opt) {
    if (opt.n != 2) {
        std::cerr << "error: mesh export revolves into 3-space and requires --n 2\n";
        return kExitUsage;
    }
    ltorus::io::RunReport report = solve_report(opt);
    report.mesh_path = opt.mesh_out;
    const ltorus::geometry::ClosedProfile coarse = ltorus::geometry::decimate_closed(
        report.solution.closed_profile, opt.config.profile_segments);
    {
        std::ofstream os = open_output(opt.mesh_out);
        ltorus::io::write_torus_obj(os, coarse, opt.segments);
        if (!os) throw std::ios_base::failure("write failed: " + opt.mesh_out);
    }
    const long rings = static_cast<long>(coarse.points.size()) - 1;
    nlohmann::ordered_json j;
    j["mesh_obj"] = opt.mesh_out;
    j["vertices"] = rings * opt.segments;
    j["faces"] = 2 * rings * opt.segments;
    j["delta_star"] = report.solution.delta_star;
    j["r_star"] = report.solution.r_star;
    std::cout << j.dump() << '\n';
    return report.solution.bound_report.all_pass() ? kExitOk : kExitProperty;
}

struct Suite {
    std::string name;
    bool pass;
    std::string detail;
};

// Exact special profiles: vertical line (plane), circle of the closed-form
// radius (sphere), horizontal line (cylinder). Each is sampled pointwise and
// checked against both the defining equation and the curvature formula.
void exact_solution_suites(std::vector<Suite>& suites) {
    const double pi = std::acos(-1.0);
    double worst_residual = 0.0;
    double worst_curvature = 0.0;
    const int samples = 1000;
    for (int n : {2, 3, 5}) {
        for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
            const ltorus::ModelParams params{n, lambda};
            const double a_sph = ltorus::geometry::sphere_radius(params);
            const double a_cyl = ltorus::geometry::cylinder_radius(params);
            for (int i = 0; i < samples; ++i) {
                const double t = pi * (i + 0.5) / samples;
                // sphere: x = a cos t, r = a sin t, tangent angle pi/2 + t
                ltorus::ProfileState sph{0.0, a_sph * std::cos(t), a_sph * std::sin(t),
                                         0.5 * pi + t};
                worst_residual = std::max(
                    worst_residual, std::abs(ltorus::geometry::lambda_residual(sph, params)));
                worst_curvature = std::max(
                    worst_curvature,
                    std::abs(ltorus::ode::curvature(sph, params) - 1.0 / a_sph));
                // cylinder: r = a, tangent angle pi, x sweeps a symmetric range
                ltorus::ProfileState cyl{0.0, -4.0 + 8.0 * i / (samples - 1.0), a_cyl, pi};
                worst_residual = std::max(
                    worst_residual, std::abs(ltorus::geometry::lambda_residual(cyl, params)));
                worst_curvature =
                    std::max(worst_curvature, std::abs(ltorus::ode::curvature(cyl, params)));
                // plane through the origin: x = 0, tangent angle pi/2; it
                // solves the defining equation only for lambda = 0, which is
                // where the curvature must vanish
                ltorus::ProfileState pln{0.0, 0.0, 0.1 + 8.0 * i / (samples - 1.0), 0.5 * pi};
                worst_residual = std::max(
                    worst_residual, std::abs(ltorus::geometry::lambda_residual(pln, params)));
                if (lambda == 0.0)
                    worst_curvature = std::max(
                        worst_curvature, std::abs(ltorus::ode::curvature(pln, params)));
            }
        }
    }
    suites.push_back({"exact-solution residuals", worst_residual <= 1e-12,
                      "max |H + <X,N> - lambda| = " + ltorus::io::format_double(worst_residual)});
    suites.push_back({"exact-solution curvature", worst_curvature <= 1e-12,
                      "max |kappa - kappa_exact| = " + ltorus::io::format_double(worst_curvature)});
}

int run_verify(const Options& opt) {
    ltorus::ModelParams params{opt.n, opt.lambda};
    params.validate_for_shot();
    opt.config.validate();

    std::vector<Suite> suites;
    exact_solution_suites(suites);

    const auto traj = ltorus::limit::integrate_limit(opt.n, 50.0, 1e-4);
    double worst = 0.0;
    for (const auto& st : traj)
        worst = std::max(worst, std::abs(ltorus::limit::first_integral(st, opt.n) - 1.0));
    suites.push_back({"limit-flow conservation", worst <= 1e-9,
                      "max |I - 1| = " + ltorus::io::format_double(worst)});
    suites.push_back({"limit-flow steepening", traj.back().sin_phi >= 0.999,
                      "sin(phi)(50) = " + ltorus::io::format_double(traj.back().sin_phi)});

    const double order = ltorus::ode::integration_order_check(params, 0.3);
    suites.push_back({"integration order", order >= 3.5 && order <= 4.5,
                      "observed p = " + ltorus::io::format_double(order)});

    bool all = true;
    for (const Suite& s : suites) {
        std::cout << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.detail << '\n';
        all = all && s.pass;
    }
    return all ? kExitOk : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotational lambda-hypersurface profile solver"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 success, 1 property failure, 2 usage or configuration error,\n"
        "3 I/O failure, 4 search did not converge");

    Options opt;

    CLI::App* shoot = app.add_subcommand("shoot", "Integrate one launch height and classify it");
    add_model_flags(shoot, opt);
    shoot->add_option("--delta", opt.delta, "Launch height r(0)")->required();
    shoot->add_option("--profile-out", opt.profile_out, "Write the sampled curve as CSV");

    CLI::App* solve = app.add_subcommand("solve", "Locate the critical launch height and close the profile");
    add_model_flags(solve, opt);
    add_search_flags(solve, opt);
    solve->add_option("--profile-out", opt.profile_out, "Write the closed profile as CSV");

    CLI::App* mesh = app.add_subcommand("mesh", "Solve, then export a revolved triangle mesh");
    add_model_flags(mesh, opt);
    add_search_flags(mesh, opt);
    mesh->add_option("--segments", opt.segments, "Angular segments of the revolution");
    mesh->add_option("--mesh-out", opt.mesh_out, "Output OBJ path")->required();

    CLI::App* verify = app.add_subcommand("verify", "Run the exact-solution, conservation and order suites");
    add_model_flags(verify, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (shoot->parsed()) return run_shoot(opt);
        if (solve->parsed()) return run_solve(opt);
        if (mesh->parsed()) return run_mesh(opt);
        return run_verify(opt);
    } catch (const ltorus::BracketError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ltorus::IndeterminateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ltorus::NoConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ltorus::JointError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitProperty;
    } catch (const ltorus::SimplicityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitProperty;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitProperty;
    }
}
