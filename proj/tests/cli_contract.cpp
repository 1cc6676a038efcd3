// Exercises the installed command-line binary end to end: flag validation,
// exit codes, file artifacts, and the JSON/CSV formats. argv[1] is the
// binary under test.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "ltorus/io.hpp"

namespace {

int g_checks = 0;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    ++g_checks;
    if (!ok) {
        ++g_failures;
        std::printf("not ok - %s\n", what.c_str());
    } else {
        std::printf("ok - %s\n", what.c_str());
    }
}

std::string g_cli;
std::string g_dir;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const std::string out_path = g_dir + "/stdout.txt";
    const std::string err_path = g_dir + "/stderr.txt";
    const std::string cmd = g_cli + " " + args + " > " + out_path + " 2> " + err_path;
    const int raw = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_contract <binary>\n");
        return 2;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/ltorus_cli_XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::perror("mkdtemp");
        return 2;
    }
    g_dir = tmpl;

    // ---- usage errors ----
    expect(run("").code == 2, "no subcommand exits 2");
    expect(run("frobnicate").code == 2, "unknown subcommand exits 2");
    expect(run("shoot --n 2 --lambda 1 --delta 0.1 --bogus").code == 2, "unknown flag exits 2");
    expect(run("shoot --n 2 --lambda 1").code == 2, "missing required delta exits 2");
    {
        const Run r = run("shoot --n 1 --lambda 1 --delta 0.1");
        expect(r.code == 2, "dimension below 2 exits 2");
        expect(contains(r.err, ">= 2"), "the dimension requirement is spelled out");
    }
    expect(run("shoot --n 2 --lambda 1 --delta 0").code == 2, "zero launch height exits 2");
    expect(run("shoot --n 2 --lambda -1 --delta 0.1").code == 2, "negative lambda exits 2");
    expect(run("solve --n 2 --lambda 0").code == 2, "search at lambda 0 exits 2");
    expect(run("mesh --n 3 --lambda 1 --mesh-out " + g_dir + "/no.obj").code == 2,
           "mesh outside 3-space exits 2");
    expect(run("verify --n 2 --lambda 1 --step -1").code == 2, "negative step exits 2");
    {
        const Run r = run("--help");
        expect(r.code == 0, "help exits 0");
        expect(contains(r.out, "Exit codes"), "help documents the exit codes");
    }

    // ---- shoot ----
    {
        const std::string csv = g_dir + "/hit.csv";
        const Run r = run("shoot --n 2 --lambda 1 --delta 0.1 --profile-out " + csv);
        expect(r.code == 0, "a classified shot exits 0");
        nlohmann::json j;
        bool parsed = true;
        try {
            j = nlohmann::json::parse(r.out);
        } catch (...) {
            parsed = false;
        }
        expect(parsed, "shoot prints one JSON document");
        expect(parsed && j["kind"] == "HitAxis", "the verdict names the axis hit");
        expect(parsed && j["delta"] == 0.1, "the verdict echoes the launch height");

        std::ifstream is(csv);
        bool rows_ok = false;
        bool residual_ok = false;
        try {
            const auto rows = ltorus::io::read_profile_csv(is);
            rows_ok = rows.size() > 9000;
            residual_ok = true;
            for (const auto& row : rows)
                if (std::abs(row[7]) > 1e-8) residual_ok = false;
        } catch (...) {
        }
        expect(rows_ok, "the profile CSV holds the dense trajectory");
        expect(residual_ok, "the residual column stays within 1e-8");
    }
    {
        const Run r = run("shoot --n 2 --lambda 1 --delta 1.5");
        expect(r.code == 0 && contains(r.out, "HorizontalTangent"),
               "a missing shot reports its horizontal tangent");
    }
    expect(run("shoot --n 2 --lambda 1 --delta 0.1 --profile-out /nonexistent/dir/x.csv").code == 3,
           "an unwritable profile path exits 3");

    // ---- solve ----
    {
        const std::string csv = g_dir + "/closed.csv";
        const Run r = run("solve --n 2 --lambda 1 --profile-out " + csv);
        expect(r.code == 0, "the base search exits 0");
        nlohmann::json j;
        bool parsed = true;
        try {
            j = nlohmann::json::parse(r.out);
        } catch (...) {
            parsed = false;
        }
        expect(parsed, "solve prints a JSON report");
        if (parsed) {
            const double aup = (std::sqrt(5.0) + 1.0) / 2.0;
            const double ds = j["delta_star"].get<double>();
            expect(ds > 0.0 && ds < aup, "the critical height is interior");
            expect(j["bound_report"]["height_bound"]["measured"].get<double>() <=
                       std::acos(-1.0) / 2 + 1e-6,
                   "the height stays under the pi/(2 lambda) cap");
            expect(j["artifacts"]["profile_csv"] == csv, "the report records the CSV path");
            expect(!contains(r.out, "duration"), "wall-clock time stays out of the report");
        }
        std::ifstream is(csv);
        std::string header, first, line, last;
        std::getline(is, header);
        std::getline(is, first);
        while (std::getline(is, line)) last = line;
        expect(header == "x,r" && !first.empty() && first == last,
               "the closed profile CSV repeats its first point");
    }
    {
        const Run r = run("solve --n 3 --lambda 0.5 --bisect-tol 1e-12");
        expect(r.code == 0, "a tight tolerance still converges");
        try {
            const nlohmann::json j = nlohmann::json::parse(r.out);
            expect(j["bracket_width"].get<double>() <= 1e-12, "the bracket honors the tolerance");
            const auto& tr = j["transition_brackets"][0];
            const double w0 = tr[1].get<double>() - tr[0].get<double>();
            const auto mids = static_cast<std::size_t>(std::ceil(std::log2(w0 / 1e-12)));
            expect(j["bracket_history"].size() == 48 + mids,
                   "one bisection sample per halving of the bracket");
        } catch (...) {
            expect(false, "tight-tolerance report parses");
        }
    }
    {
        const Run a = run("solve --n 2 --lambda 1");
        const Run b = run("solve --n 2 --lambda 1 --jobs 4");
        expect(a.code == 0 && b.code == 0 && a.out == b.out,
               "parallel grid scans do not change the report");
    }
    expect(run("solve --n 2 --lambda 1 --delta-lo 0.1 --delta-hi 0.2").code == 4,
           "a bracket that never misses exits 4");

    // ---- mesh ----
    {
        const std::string obj = g_dir + "/torus.obj";
        const Run r = run("mesh --n 2 --lambda 1 --segments 32 --mesh-out " + obj);
        expect(r.code == 0, "mesh generation exits 0");
        std::ifstream is(obj);
        bool topo_ok = false;
        try {
            const ltorus::io::MeshStats stats = ltorus::io::obj_stats(is);
            topo_ok = stats.euler_characteristic == 0 && stats.watertight && stats.oriented;
        } catch (...) {
        }
        expect(topo_ok, "the exported surface is a watertight oriented torus");
    }

    // ---- verify ----
    expect(run("verify --n 2 --lambda 1").code == 0, "the property suite passes at n=2");
    expect(run("verify --n 5 --lambda 2").code == 0, "the property suite passes at n=5");

    std::printf("%d checks, %d failures\n", g_checks, g_failures);
    return g_failures == 0 ? 0 : 1;
}
