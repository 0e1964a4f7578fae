#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "floq/io.hpp"
#include "helpers.hpp"

using namespace floq;
using testutil::pi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CmdResult {
    int code = -1;
    std::string out, err;
};

// run the installed CLI binary with stdout/stderr captured
CmdResult run_cli(const std::string& args) {
    const char* cli = std::getenv("FLOQ_CLI_PATH");
    if (cli == nullptr) cli = FLOQ_CLI_PATH;  // baked in by the build
    static int counter = 0;
    const fs::path base = fs::temp_directory_path() / ("floq_cli_" + std::to_string(counter++));
    const fs::path so = base.string() + ".out", se = base.string() + ".err";
    const std::string cmd = std::string(cli) + " " + args + " >" + so.string() + " 2>" + se.string();
    const int rc = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    fs::remove(so);
    fs::remove(se);
    return r;
}

fs::path temp_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("floq_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("12-digit shortest formatting") {
    CHECK(format_g12(0.25) == "0.25");
    CHECK(format_g12(3.0) == "3");
    CHECK(format_g12(-2.5) == "-2.5");
    CHECK(format_g12(0.0) == "0");
    CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
    CHECK(format_g12(1e-17) == "1e-17");
    CHECK(format_g12(0.8000000000000001) == "0.8");
}

TEST_CASE("config serialization round trip is idempotent") {
    json j = {{"model", "hhf"},     {"lx", 7},          {"ly", 4},
              {"boundary", "open"}, {"theta_over_pi", 0.25}, {"u_over_j", 3.15},
              {"alpha", 0.5},       {"periods", 12},    {"initial_site", {3, 1}},
              {"stride", 2}};
    const RunConfig c = config_from_json(j);
    const json once = config_to_json(c);
    const json twice = config_to_json(config_from_json(once));
    CHECK(once.dump() == twice.dump());
    CHECK(once.at("model") == "hhf");
    CHECK(once.at("u_over_j") == doctest::Approx(3.15));
    CHECK(!once.contains("k_index"));
}

TEST_CASE("config errors name the offending field") {
    auto field_of = [](json j) -> std::string {
        try {
            config_from_json(j);
        } catch (const ConfigError& e) {
            return e.field;
        }
        return "";
    };
    CHECK(field_of({{"theta_over_pi", 0.0}}) == "theta_over_pi");
    CHECK(field_of({{"theta_over_pi", 1.5}}) == "theta_over_pi");
    CHECK(field_of({{"lx", 1}}) == "lx");
    CHECK(field_of({{"periods", 0}}) == "periods");
    CHECK(field_of({{"stride", -1}}) == "stride");
    CHECK(field_of({{"boundary", "moebius"}}) == "boundary");
    CHECK(field_of({{"model", "xy"}}) == "model");
    CHECK(field_of({{"initial_site", {9, 0}}}) == "initial_site");
    CHECK(field_of({{"alpha", 1.25}}) == "alpha");
    CHECK(field_of({{"k_index", 0}}) == "k_index");

    // geometry constraints surface through schedule building
    RunConfig c = config_from_json({{"boundary", "cylinder_y"}, {"ly", 3}, {"initial_site", {0, 0}}});
    try {
        schedule_from_config(c);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.field == "ly");
    }
}

TEST_CASE("interaction phase resolution") {
    RunConfig c;
    c.theta_over_pi = 0.8;
    const double theta = 0.8 * pi;

    CHECK(gamma_from_config(c, theta, false) == 0.0);
    CHECK_THROWS_AS(gamma_from_config(c, theta, true), ConfigError);

    c.u_over_j = 0.0;  // explicit zero is a legitimate interacting choice
    CHECK(gamma_from_config(c, theta, true) == 0.0);

    c.u_over_j = 3.15;
    CHECK(gamma_from_config(c, theta, true) == doctest::Approx(3.15 * theta));

    c.k_index = 2;  // both given: ambiguous
    CHECK_THROWS_AS(gamma_from_config(c, theta, true), ConfigError);

    c.u_over_j.reset();
    CHECK(gamma_from_config(c, theta, true) == doctest::Approx(3.0 * theta).epsilon(1e-12));
}

TEST_CASE("schedule digest separates models and geometries") {
    const LatticeSpec spec{9, 6, Boundary::open};
    const auto a1 = schedule_hash(build_afi_schedule(spec));
    const auto a2 = schedule_hash(build_afi_schedule(spec));
    CHECK(a1 == a2);
    CHECK(a1 != schedule_hash(build_hhf_schedule(spec, 0.5)));
    CHECK(a1 != schedule_hash(build_afi_schedule({8, 6, Boundary::open})));

    const json js = schedule_to_json(build_afi_schedule(spec));
    CHECK(js.at("steps").size() == 4);
    CHECK(js.at("steps")[0][0].size() == 3);  // [i, j, phase] triples
}

TEST_CASE("csv headers") {
    std::ostringstream s1, s2, s3, s4;
    write_spectrum_csv(s1, {});
    CHECK(s1.str() == "k_y,band_index,quasienergy_over_omega,edge_weight\n");
    write_decoupling_csv(s2, {});
    CHECK(s2.str() == "k,theta_over_pi,u_over_j,theta_prime_over_pi,branch\n");
    write_sweep_csv(s3, {});
    CHECK(s3.str() == "k,theta_prime_over_pi,theta_over_pi,u_over_j,u3_over_j,u4_over_j,p_dec\n");
    const LatticeSpec spec{2, 2, Boundary::open};
    write_density_csv(s4, VectorXd::Zero(4), spec);
    CHECK(s4.str() == "x,y,a\n0,0,0\n1,0,0\n0,1,0\n1,1,0\n");
}

TEST_CASE("trajectory serialization") {
    const LatticeSpec spec{3, 2, Boundary::open};
    const auto sched = build_afi_schedule(spec);
    const TwoParticleBasis basis(spec.n_sites());
    const auto traj = evolve(doublon_state(basis, 0), sched, 0.8 * pi, 2.4 * pi, 2);
    const json j = trajectory_to_json(traj, sched, 0.8 * pi, 3.0, false);
    CHECK(j.at("snapshots").size() == 3);
    CHECK(j.at("geometry").at("lx") == 3);
    CHECK(j.at("snapshots")[0].at("a").size() == 6);
    CHECK(double(j.at("snapshots")[0].at("o_d")) == doctest::Approx(1.0));
    CHECK(!j.at("snapshots")[0].contains("amplitude_matrix"));
    CHECK(j.at("schedule_hash").get<std::string>().size() == 16);

    const json jm = trajectory_to_json(traj, sched, 0.8 * pi, 3.0, true);
    CHECK(jm.at("snapshots")[0].at("amplitude_matrix").size() == 6);
}

TEST_CASE("cli: decoupling point") {
    auto r = run_cli("decouple --theta-over-pi 0.8 --k-index 2");
    CHECK(r.code == 0);
    CHECK(r.out == "k,theta_over_pi,u_over_j,theta_prime_over_pi,branch\n2,0.8,3,0.6,plus\n");

    // unreachable point: distinct exit code, message on stderr
    r = run_cli("decouple --theta-over-pi 0.9 --k-index 1");
    CHECK(r.code == 3);
    CHECK(r.err.find("no solution") != std::string::npos);
}

TEST_CASE("cli: config problems exit with 2 and name the field") {
    auto r = run_cli("decouple --theta-over-pi 1.5 --k-index 2");
    CHECK(r.code == 2);
    CHECK(r.err.find("theta_over_pi") != std::string::npos);

    r = run_cli("evolve --boundary torus --k-index 2");
    CHECK(r.code == 2);
    CHECK(r.err.find("boundary") != std::string::npos);

    r = run_cli("evolve --lx 4 --ly 2 --periods 1");  // no interaction given
    CHECK(r.code == 2);
    CHECK(r.err.find("u_over_j") != std::string::npos);
}

TEST_CASE("cli: spectrum output shape") {
    const fs::path dir = temp_dir("spectrum");
    const fs::path out = dir / "spec.csv";
    auto r = run_cli("spectrum --lx 10 --theta-over-pi 0.6 --n-k 8 --out " + out.string());
    CHECK(r.code == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("k_y,band_index,quasienergy_over_omega,edge_weight\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8 * 20);
    fs::remove_all(dir);
}

TEST_CASE("cli: evolve writes trajectory and densities") {
    const fs::path dir = temp_dir("evolve");
    auto r = run_cli("evolve --lx 4 --ly 2 --theta-over-pi 0.8 --k-index 2 --periods 2 --out-dir " +
                     dir.string());
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,o_d\n", 0) == 0);
    CHECK(fs::exists(dir / "trajectory.json"));
    CHECK(fs::exists(dir / "density_0000.csv"));
    CHECK(fs::exists(dir / "density_0002.csv"));
    json j;
    std::ifstream(dir / "trajectory.json") >> j;
    CHECK(j.at("snapshots").size() == 3);
    CHECK(double(j.at("snapshots")[2].at("o_d")) == doctest::Approx(1.0).epsilon(1e-10));
    fs::remove_all(dir);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
    const fs::path dir = temp_dir("determinism");
    const fs::path o1 = dir / "a.csv", o2 = dir / "b.csv";
    const std::string args = "stability --tp-steps 25 --k-list 2 --u3-over-j 10 --out ";
    CHECK(run_cli(args + o1.string()).code == 0);
    CHECK(run_cli(args + o2.string()).code == 0);
    const std::string t1 = slurp(o1), t2 = slurp(o2);
    CHECK(!t1.empty());
    CHECK(t1 == t2);
    fs::remove_all(dir);
}

TEST_CASE("cli: validation suite passes") {
    auto r = run_cli("validate");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("ok") != std::string::npos);
}
