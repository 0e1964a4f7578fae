#include "floq/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "floq/two_particle.hpp"

namespace floq {

namespace {

Model model_from_string(const std::string& s) {
    if (s == "afi") return Model::afi;
    if (s == "hhf") return Model::hhf;
    throw ConfigError("model", "must be 'afi' or 'hhf', got '" + s + "'");
}

std::string to_string(Model m) { return m == Model::afi ? "afi" : "hhf"; }

template <typename T>
void read_field(const json& j, const char* key, T& into) {
    if (!j.contains(key)) return;
    try {
        into = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key, "has the wrong type");
    }
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    if (j.contains("model")) c.model = model_from_string(j.at("model").get<std::string>());
    read_field(j, "lx", c.lx);
    read_field(j, "ly", c.ly);
    if (j.contains("boundary")) {
        try {
            c.boundary = boundary_from_string(j.at("boundary").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("boundary", e.what());
        }
    }
    read_field(j, "theta_over_pi", c.theta_over_pi);
    if (j.contains("k_index")) {
        int k = 0;
        read_field(j, "k_index", k);
        c.k_index = k;
    }
    if (j.contains("u_over_j")) {
        double u = 0.0;
        read_field(j, "u_over_j", u);
        c.u_over_j = u;
    }
    read_field(j, "u3_over_j", c.u3_over_j);
    read_field(j, "u4_over_j", c.u4_over_j);
    read_field(j, "alpha", c.alpha);
    read_field(j, "periods", c.periods);
    if (j.contains("initial_site")) {
        const auto& site = j.at("initial_site");
        if (!site.is_array() || site.size() != 2)
            throw ConfigError("initial_site", "must be a [x, y] pair");
        c.initial_x = site[0].get<int>();
        c.initial_y = site[1].get<int>();
    }
    read_field(j, "stride", c.stride);

    if (!(c.theta_over_pi > 0.0) || c.theta_over_pi > 1.0)
        throw ConfigError("theta_over_pi", "must lie in (0, 1]");
    if (c.periods < 1) throw ConfigError("periods", "must be >= 1");
    if (c.stride < 1) throw ConfigError("stride", "must be >= 1");
    if (c.lx < 2) throw ConfigError("lx", "must be >= 2");
    if (c.ly < 2) throw ConfigError("ly", "must be >= 2");
    if (c.k_index && *c.k_index < 1) throw ConfigError("k_index", "must be >= 1");
    if (c.initial_x < 0 || c.initial_x >= c.lx) throw ConfigError("initial_site", "x outside lattice");
    if (c.initial_y < 0 || c.initial_y >= c.ly) throw ConfigError("initial_site", "y outside lattice");
    if (c.alpha < 0.0 || c.alpha > 1.0) throw ConfigError("alpha", "must lie in [0, 1]");
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["model"] = to_string(c.model);
    j["lx"] = c.lx;
    j["ly"] = c.ly;
    j["boundary"] = to_string(c.boundary);
    j["theta_over_pi"] = c.theta_over_pi;
    if (c.k_index) j["k_index"] = *c.k_index;
    if (c.u_over_j) j["u_over_j"] = *c.u_over_j;
    j["u3_over_j"] = c.u3_over_j;
    j["u4_over_j"] = c.u4_over_j;
    j["alpha"] = c.alpha;
    j["periods"] = c.periods;
    j["initial_site"] = {c.initial_x, c.initial_y};
    j["stride"] = c.stride;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("parse failure: ") + e.what());
    }
    return config_from_json(j);
}

HoppingSchedule schedule_from_config(const RunConfig& c) {
    const LatticeSpec spec{c.lx, c.ly, c.boundary};
    try {
        validate_lattice_spec(spec);
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        throw ConfigError(msg.substr(0, msg.find(':')), msg.substr(msg.find(':') + 2));
    }
    return c.model == Model::afi ? build_afi_schedule(spec) : build_hhf_schedule(spec, c.alpha);
}

double gamma_from_config(const RunConfig& c, double theta, bool interacting) {
    if (c.k_index && c.u_over_j)
        throw ConfigError("k_index", "give either k_index or u_over_j, not both");
    if (c.k_index) return decoupling_ratio(theta, *c.k_index) * theta;
    if (c.u_over_j) return *c.u_over_j * theta;
    if (interacting) throw ConfigError("u_over_j", "an interacting run needs k_index or u_over_j");
    return 0.0;
}

std::string format_g12(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

json schedule_to_json(const HoppingSchedule& s) {
    json j;
    j["lattice"] = {{"lx", s.spec.lx}, {"ly", s.spec.ly}, {"boundary", to_string(s.spec.boundary)}};
    json steps = json::array();
    for (const HoppingStep& step : s.steps) {
        json links = json::array();
        for (const Link& l : step.links) links.push_back({l.i, l.j, l.phase});
        steps.push_back(std::move(links));
    }
    j["steps"] = std::move(steps);
    return j;
}

std::uint64_t schedule_hash(const HoppingSchedule& s) {
    const std::string text = schedule_to_json(s).dump();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
    os << "k_y,band_index,quasienergy_over_omega,edge_weight\n";
    for (const SpectrumRow& r : rows)
        os << format_g12(r.k_y) << ',' << r.band << ',' << format_g12(r.eps) << ','
           << format_g12(r.edge_w) << '\n';
}

void write_decoupling_csv(std::ostream& os, const std::vector<DecouplingSolution>& rows) {
    constexpr double pi = std::numbers::pi;
    os << "k,theta_over_pi,u_over_j,theta_prime_over_pi,branch\n";
    for (const DecouplingSolution& r : rows)
        os << r.k << ',' << format_g12(r.theta / pi) << ',' << format_g12(r.u_over_j) << ','
           << format_g12(r.theta_prime / pi) << ','
           << (r.branch == Branch::plus ? "plus" : "minus") << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    constexpr double pi = std::numbers::pi;
    os << "k,theta_prime_over_pi,theta_over_pi,u_over_j,u3_over_j,u4_over_j,p_dec\n";
    for (const SweepRow& r : rows)
        os << r.k << ',' << format_g12(r.theta_prime / pi) << ',' << format_g12(r.theta / pi)
           << ',' << format_g12(r.u_over_j) << ',' << format_g12(r.u3) << ',' << format_g12(r.u4)
           << ',' << format_g12(r.p_dec) << '\n';
}

void write_density_csv(std::ostream& os, const VectorXd& site_density, const LatticeSpec& spec) {
    os << "x,y,a\n";
    for (int y = 0; y < spec.ly; ++y)
        for (int x = 0; x < spec.lx; ++x)
            os << x << ',' << y << ',' << format_g12(site_density(spec.site(x, y))) << '\n';
}

json trajectory_to_json(const Trajectory& traj, const HoppingSchedule& sched, double theta,
                        double u_over_j, bool with_amplitude_matrix) {
    constexpr double pi = std::numbers::pi;
    const TwoParticleBasis basis(sched.spec.n_sites());
    char hash_hex[17];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(schedule_hash(sched)));
    json j;
    j["schedule_hash"] = std::string(hash_hex);
    j["theta_over_pi"] = theta / pi;
    j["u_over_j"] = u_over_j;
    j["geometry"] = {{"lx", sched.spec.lx},
                     {"ly", sched.spec.ly},
                     {"boundary", to_string(sched.spec.boundary)}};
    j["stride"] = traj.stride;
    json snaps = json::array();
    for (const Snapshot& s : traj.snapshots) {
        json entry;
        entry["t"] = s.time;
        const VectorXd a = doublon_density(s.state, basis);
        json al = json::array();
        for (int l = 0; l < a.size(); ++l) al.push_back(a(l));
        entry["a"] = std::move(al);
        entry["o_d"] = doublon_overlap(s.state, basis);
        if (with_amplitude_matrix) {
            const Eigen::MatrixXd m = amplitude_matrix(s.state, basis);
            json rows = json::array();
            for (int r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (int cc = 0; cc < m.cols(); ++cc) row.push_back(m(r, cc));
                rows.push_back(std::move(row));
            }
            entry["amplitude_matrix"] = std::move(rows);
        }
        snaps.push_back(std::move(entry));
    }
    j["snapshots"] = std::move(snaps);
    return j;
}

}  // namespace floq
