// Command line front end: spectrum, chern, decouple, evolve, stability,
// validate, plus `run` which dispatches on the "command" key of a config
// file.  Exit codes: 0 ok, 2 configuration problem (message names the
// offending field), 3 no decoupling solution, 4 validation failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "floq/chern.hpp"
#include "floq/dynamics.hpp"
#include "floq/io.hpp"
#include "floq/reference.hpp"
#include "floq/single_particle.hpp"
#include "floq/stability.hpp"
#include "floq/two_particle.hpp"

namespace {

constexpr double pi = std::numbers::pi;

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> model, boundary;
    std::optional<int> lx, ly, k_index, periods, stride;
    std::optional<double> theta_over_pi, u_over_j, u3_over_j, u4_over_j, alpha;
    std::vector<int> initial_site;  // empty = keep config value
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("-c,--config", f.config_path, "JSON run configuration");
    cmd->add_option("--model", f.model, "afi | hhf");
    cmd->add_option("--lx", f.lx);
    cmd->add_option("--ly", f.ly);
    cmd->add_option("--boundary", f.boundary, "open | cylinder_y | torus");
    cmd->add_option("--theta-over-pi", f.theta_over_pi);
    cmd->add_option("--k-index", f.k_index, "decoupling index (fixes U/J)");
    cmd->add_option("--u-over-j", f.u_over_j);
    cmd->add_option("--u3-over-j", f.u3_over_j);
    cmd->add_option("--u4-over-j", f.u4_over_j);
    cmd->add_option("--alpha", f.alpha, "flux density for the hhf model");
    cmd->add_option("--periods", f.periods);
    cmd->add_option("--initial-site", f.initial_site, "x y")->expected(2);
    cmd->add_option("--stride", f.stride);
}

// file values first, flags override
floq::RunConfig resolve(const CommonFlags& f, const floq::json& extra_defaults = {}) {
    floq::json j = extra_defaults;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw floq::ConfigError("config", "cannot open '" + f.config_path + "'");
        floq::json file;
        try {
            in >> file;
        } catch (const floq::json::exception& e) {
            throw floq::ConfigError("config", std::string("parse failure: ") + e.what());
        }
        for (auto& [k, v] : file.items()) j[k] = v;
    }
    if (f.model) j["model"] = *f.model;
    if (f.lx) j["lx"] = *f.lx;
    if (f.ly) j["ly"] = *f.ly;
    if (f.boundary) j["boundary"] = *f.boundary;
    if (f.theta_over_pi) j["theta_over_pi"] = *f.theta_over_pi;
    if (f.k_index) j["k_index"] = *f.k_index;
    if (f.u_over_j) j["u_over_j"] = *f.u_over_j;
    if (f.u3_over_j) j["u3_over_j"] = *f.u3_over_j;
    if (f.u4_over_j) j["u4_over_j"] = *f.u4_over_j;
    if (f.alpha) j["alpha"] = *f.alpha;
    if (f.periods) j["periods"] = *f.periods;
    if (!f.initial_site.empty()) j["initial_site"] = f.initial_site;
    if (f.stride) j["stride"] = *f.stride;
    j.erase("command");  // harness metadata, not a physics field
    return floq::config_from_json(j);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw floq::ConfigError("out", "cannot write '" + path + "'");
    return os;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        open_out(path) << text;
    }
}

int cmd_spectrum(const CommonFlags& f, const std::string& out, int n_k) {
    floq::RunConfig c = resolve(f, {{"boundary", "cylinder_y"}, {"ly", 2}, {"lx", 100}});
    if (c.boundary != floq::Boundary::cylinder_y)
        throw floq::ConfigError("boundary", "spectrum runs on a cylinder_y lattice");
    const floq::HoppingSchedule sched = floq::schedule_from_config(c);
    const double theta = c.theta_over_pi * pi;
    std::vector<floq::SpectrumRow> rows;
    for (int ik = 0; ik < n_k; ++ik) {
        const double ky = 2.0 * pi * ik / n_k;
        const auto sp = floq::quasienergies(floq::bloch_floquet_operator(sched, theta, ky));
        for (int m = 0; m < sp.eps.size(); ++m)
            rows.push_back({ky, m, sp.eps(m),
                            floq::edge_weight(sp.vectors.col(m), sched.spec)});
    }
    std::ostringstream os;
    floq::write_spectrum_csv(os, rows);
    emit(out, os.str());
    return 0;
}

int cmd_chern(const CommonFlags& f, const std::string& out, int grid) {
    floq::RunConfig c = resolve(f, {{"boundary", "torus"}, {"lx", 2}, {"ly", 2}});
    const floq::HoppingSchedule cell = floq::schedule_from_config(c);
    if (c.lx != 2 || c.ly != 2)
        throw floq::ConfigError("lx", "chern uses the two-by-two torus supercell");
    const double theta = c.theta_over_pi * pi;
    const int lower = floq::chern_number(cell, theta, -0.5, 0.0, grid);
    const int upper = floq::chern_number(cell, theta, 0.0, 0.5, grid);
    std::ostringstream os;
    os << "band,chern\n";
    os << "lower," << lower << "\n";
    os << "upper," << upper << "\n";
    emit(out, os.str());
    return 0;
}

int cmd_decouple(const CommonFlags& f, const std::string& out) {
    floq::RunConfig c = resolve(f);
    if (!c.k_index) throw floq::ConfigError("k_index", "decouple needs the decoupling index");
    const auto sol = floq::effective_parameters(c.theta_over_pi * pi, *c.k_index, 0.0);
    std::ostringstream os;
    floq::write_decoupling_csv(os, {sol});
    emit(out, os.str());
    return 0;
}

int cmd_evolve(const CommonFlags& f, const std::string& out_dir, bool with_amplitude) {
    floq::RunConfig c = resolve(f);
    if (c.boundary != floq::Boundary::open)
        throw floq::ConfigError("boundary", "evolve expects an open lattice");
    const floq::HoppingSchedule sched = floq::schedule_from_config(c);
    const double theta = c.theta_over_pi * pi;
    const double gamma = floq::gamma_from_config(c, theta, true);
    const floq::TwoParticleBasis basis(sched.spec.n_sites());
    const int site0 = sched.spec.site(c.initial_x, c.initial_y);
    const floq::Trajectory traj =
        floq::evolve(floq::doublon_state(basis, site0), sched, theta, gamma, c.periods, c.stride);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "trajectory.json");
        os << floq::trajectory_to_json(traj, sched, theta, gamma / theta, with_amplitude).dump(2)
           << "\n";
    }
    for (size_t si = 0; si < traj.snapshots.size(); ++si) {
        const auto& snap = traj.snapshots[si];
        char name[32];
        std::snprintf(name, sizeof(name), "density_%04d.csv", static_cast<int>(snap.time));
        std::ofstream os(fs::path(out_dir) / name);
        floq::write_density_csv(os, floq::doublon_density(snap.state, basis), sched.spec);
    }
    // per-snapshot doublon weight summary on stdout
    std::printf("t,o_d\n");
    for (const auto& snap : traj.snapshots)
        std::printf("%s,%s\n", floq::format_g12(snap.time).c_str(),
                    floq::format_g12(floq::doublon_overlap(snap.state, basis)).c_str());
    return 0;
}

int cmd_stability(const CommonFlags& f, const std::string& out, bool tune,
                  std::vector<int> k_list, int tp_steps, double tp_min, double tp_max,
                  double box_lo, double box_hi) {
    floq::RunConfig c = resolve(f);
    if (tune) {
        if (!c.k_index) throw floq::ConfigError("k_index", "tune needs the decoupling index");
        // here theta_over_pi is the target effective angle theta'/pi
        const auto r =
            floq::tune_interactions(c.theta_over_pi * pi, *c.k_index, box_lo, box_hi);
        floq::json j;
        j["theta_prime_over_pi"] = c.theta_over_pi;
        j["k"] = *c.k_index;
        j["u3_over_j"] = r.u3;
        j["u4_over_j"] = r.u4;
        j["p_dec"] = r.p_dec;
        j["evaluations"] = r.evaluations;
        emit(out, j.dump(2) + "\n");
        return 0;
    }
    if (k_list.empty()) k_list = {1, 2, 3, 4};
    std::vector<double> grid(tp_steps);
    for (int m = 0; m < tp_steps; ++m)
        grid[m] = pi * (tp_min + (tp_max - tp_min) * m / (tp_steps - 1));
    const auto sweep = floq::sweep_pdec(k_list, grid, c.u3_over_j, c.u4_over_j);
    std::ostringstream os;
    floq::write_sweep_csv(os, sweep.rows);
    emit(out, os.str());
    if (sweep.skipped > 0)
        std::fprintf(stderr, "skipped %d grid points without a decoupling solution\n",
                     sweep.skipped);
    return 0;
}

int cmd_validate() {
    const auto checks = floq::reference::run_validation_suite();
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%-45s %s  max_err=%.3e\n", c.name.c_str(), c.pass ? "ok" : "FAIL", c.err);
        std::fprintf(stderr, "%-45s %.1f ms\n", c.name.c_str(), c.millis);
        all = all && c.pass;
    }
    return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven-lattice simulator: topological single-particle bands and"
                 " interaction-protected doublon transport"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string out = "-";
    std::string out_dir = "out";
    int n_k = 64, grid = 32, tp_steps = 97;
    double tp_min = 0.02, tp_max = 0.98, box_lo = 0.0, box_hi = 2.0;
    std::vector<int> k_list;
    bool tune = false, with_amplitude = false;
    std::string run_cfg;

    auto* sp = app.add_subcommand("spectrum", "k_y-resolved quasienergies on a cylinder (CSV)");
    add_common(sp, f);
    sp->add_option("--out", out, "output path, - for stdout");
    sp->add_option("--n-k", n_k, "momentum grid points");

    auto* ch = app.add_subcommand("chern", "band Chern numbers on the torus supercell");
    add_common(ch, f);
    ch->add_option("--out", out);
    ch->add_option("--grid", grid, "zone grid (refined x2 internally)");

    auto* dc = app.add_subcommand("decouple", "effective doublon drive at a decoupling point");
    add_common(dc, f);
    dc->add_option("--out", out);

    auto* ev = app.add_subcommand("evolve", "stroboscopic two-boson evolution on an open lattice");
    add_common(ev, f);
    ev->add_option("--out-dir", out_dir, "directory for trajectory.json + density CSVs");
    ev->add_flag("--amplitude-matrix", with_amplitude, "embed full pair-probability matrices");

    auto* st = app.add_subcommand("stability", "doublon-collision decay sweep / tuning");
    add_common(st, f);
    st->add_option("--out", out);
    st->add_option("--k-list", k_list);
    st->add_option("--tp-steps", tp_steps);
    st->add_option("--tp-min", tp_min);
    st->add_option("--tp-max", tp_max);
    st->add_flag("--tune", tune, "minimize p_dec over (u3, u4)");
    st->add_option("--box-lo", box_lo);
    st->add_option("--box-hi", box_hi);

    auto* va = app.add_subcommand("validate", "cross-check closed forms against brute force");
    (void)va;

    auto* rn = app.add_subcommand("run", "dispatch on the 'command' key of a config file");
    rn->add_option("-c,--config", run_cfg, "JSON config with a 'command' field")->required();
    rn->add_option("--out", out);
    rn->add_option("--out-dir", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(f, out, n_k);
        if (ch->parsed()) return cmd_chern(f, out, grid);
        if (dc->parsed()) return cmd_decouple(f, out);
        if (ev->parsed()) return cmd_evolve(f, out_dir, with_amplitude);
        if (st->parsed())
            return cmd_stability(f, out, tune, k_list, tp_steps, tp_min, tp_max, box_lo, box_hi);
        if (va->parsed()) return cmd_validate();
        if (rn->parsed()) {
            std::ifstream in(run_cfg);
            if (!in) throw floq::ConfigError("config", "cannot open '" + run_cfg + "'");
            floq::json j;
            in >> j;
            if (!j.contains("command"))
                throw floq::ConfigError("command", "config needs a 'command' field for run");
            const std::string command = j.at("command").get<std::string>();
            CommonFlags rf;
            rf.config_path = run_cfg;
            if (command == "spectrum")
                return cmd_spectrum(rf, out, j.value("n_k", 64));
            if (command == "chern") return cmd_chern(rf, out, j.value("grid", 32));
            if (command == "decouple") return cmd_decouple(rf, out);
            if (command == "evolve")
                return cmd_evolve(rf, out_dir, j.value("amplitude_matrix", false));
            if (command == "stability") {
                std::vector<int> ks = j.value("k_list", std::vector<int>{});
                return cmd_stability(rf, out, j.value("tune", false), ks,
                                     j.value("tp_steps", 97), j.value("tp_min", 0.02),
                                     j.value("tp_max", 0.98), j.value("box_lo", 0.0),
                                     j.value("box_hi", 2.0));
            }
            if (command == "validate") return cmd_validate();
            throw floq::ConfigError("command", "unknown command '" + command + "'");
        }
    } catch (const floq::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const floq::NoSolutionError& e) {
        std::fprintf(stderr, "no solution: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
