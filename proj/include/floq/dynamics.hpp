#pragma once

#include <Eigen/Dense>

#include "floq/lattice.hpp"
#include "floq/two_particle.hpp"

namespace floq {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Stroboscopic snapshot at an integer number of periods.
struct Snapshot {
    double time = 0.0;  // in periods
    VectorXcd state;
};

struct Trajectory {
    int stride = 1;
    std::vector<Snapshot> snapshots;
};

// |l l> doublon basis state.
VectorXcd doublon_state(const TwoParticleBasis& basis, int site);

// Stroboscopic two-boson evolution; snapshots every `stride` periods starting
// at t = 0 and always including t = n_periods.  The initial state must be
// normalized to 1e-10.
Trajectory evolve(const VectorXcd& initial, const HoppingSchedule& schedule, double theta,
                  double gamma, int n_periods, int stride = 1);

// A_l = |<ll|psi>|^2 on every site.
VectorXd doublon_density(const VectorXcd& state, const TwoParticleBasis& basis);

// O_d = sum_l A_l, the total doublon weight.
double doublon_overlap(const VectorXcd& state, const TwoParticleBasis& basis);

// Site-resolved probability matrix: diagonal |psi_ll|^2, off-diagonal pair
// weight |psi_(l1,l2)|^2 split evenly between (l1,l2) and (l2,l1).  Sums to
// one for a normalized state.
Eigen::MatrixXd amplitude_matrix(const VectorXcd& state, const TwoParticleBasis& basis);

// Entanglement entropy between the two (identical) bosons: -sum p ln p over
// the normalized squared singular values of the first-quantized coefficient
// matrix c(l,l) = psi_ll, c(l1,l2) = psi_(l1,l2)/sqrt(2).
double schmidt_entropy(const VectorXcd& state, const TwoParticleBasis& basis);

// Density centroid of a site distribution (normalized by its total weight).
struct Centroid {
    double x = 0.0;
    double y = 0.0;
};
Centroid density_centroid(const VectorXd& site_density, const LatticeSpec& spec);

}  // namespace floq
