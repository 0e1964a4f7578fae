#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "floq/dynamics.hpp"
#include "floq/lattice.hpp"
#include "floq/single_particle.hpp"
#include "floq/stability.hpp"

namespace floq {

using json = nlohmann::json;

// Configuration or flag problem; .field names the offender (exit code 2).
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& what)
        : std::runtime_error(f + ": " + what), field(std::move(f)) {}
};

enum class Model { afi, hhf };

// One run description, shared by all subcommands; file values first, command
// line flags override.  Everything is deterministic: no seeds anywhere.
struct RunConfig {
    Model model = Model::afi;
    int lx = 9;
    int ly = 6;
    Boundary boundary = Boundary::open;
    double theta_over_pi = 0.8;
    std::optional<int> k_index;        // decoupling index; fixes U/J via theta
    std::optional<double> u_over_j;    // direct interaction strength
    double u3_over_j = 0.0;
    double u4_over_j = 0.0;
    double alpha = 0.5;                // flux density of the hhf model
    int periods = 40;
    int initial_x = 0;
    int initial_y = 0;
    int stride = 1;
};

RunConfig config_from_json(const json& j);
json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

// Schedule for this configuration (validated spec included).
HoppingSchedule schedule_from_config(const RunConfig& c);

// Interaction phase per step, gamma = U tau.  Resolves the k_index /
// u_over_j alternative; `interacting` demands that exactly one of them was
// given.  theta passed separately (units of radians).
double gamma_from_config(const RunConfig& c, double theta, bool interacting);

// Shortest representation within 12 significant digits; '.' decimal point,
// locale independent.
std::string format_g12(double v);

// FNV-1a over the canonical schedule serialization.
std::uint64_t schedule_hash(const HoppingSchedule& s);
json schedule_to_json(const HoppingSchedule& s);

// column layout: k_y,band_index,quasienergy_over_omega,edge_weight
struct SpectrumRow {
    double k_y = 0.0;
    int band = 0;
    double eps = 0.0;
    double edge_w = 0.0;
};
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

// column layout: k,theta_over_pi,u_over_j,theta_prime_over_pi,branch
void write_decoupling_csv(std::ostream& os, const std::vector<DecouplingSolution>& rows);

// column layout: k,theta_prime_over_pi,theta_over_pi,u_over_j,u3_over_j,u4_over_j,p_dec
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// column layout: x,y,a
void write_density_csv(std::ostream& os, const VectorXd& site_density, const LatticeSpec& spec);

json trajectory_to_json(const Trajectory& traj, const HoppingSchedule& sched, double theta,
                        double u_over_j, bool with_amplitude_matrix);

}  // namespace floq
