#pragma once

#include <Eigen/Dense>
#include <vector>

#include "floq/lattice.hpp"
#include "floq/two_particle.hpp"

namespace floq {

using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Matrix5cd = Eigen::Matrix<std::complex<double>, 5, 5>;

// Single-bond Hilbert space truncated at four bosons, ordered {|2,2>,
// |3,1>, |1,3>, |4,0>, |0,4>}: the doublon pair |D>, the triplet channels
// |T_a/b>, the quadruplet channels |Q_a/b>.  u3 and u4 are the extra
// three- and four-body on-site energies on top of the pairwise u.
struct QuadHamiltonian {
    double j = 1.0;
    double u = 0.0;
    double u3 = 0.0;
    double u4 = 0.0;

    Matrix5d matrix() const;
};

Matrix5d build_quad_hamiltonian(double j, double u, double u3, double u4);

// exp(-i h tau) by eigendecomposition of the (real symmetric) h.
Matrix5cd quad_evolution(const Matrix5d& h, double tau);

// Probability that two doublons meeting on a bond have left the |D> channel
// after one step: p_dec = 1 - |M(0,0)|^2 with M = exp(-i H theta), U fixed by
// the decoupling condition at (theta, k).
struct DecayResult {
    double theta_prime = 0.0;
    int k = 0;
    double theta = 0.0;
    double u_over_j = 0.0;
    double p_dec = 0.0;
};

DecayResult decay_probability(double theta, int k, double u3, double u4);

// All drive angles theta whose effective angle equals theta_prime at this k,
// descending (larger theta = smaller U).  Empty when theta_prime is outside
// the reachable band.
std::vector<double> invert_theta_prime_all(double theta_prime, int k);

// Canonical inversion: the largest solution.  Throws NoSolutionError when
// theta_prime is out of range for this k.
double invert_theta_prime(double theta_prime, int k);

struct SweepRow {
    int k = 0;
    double theta_prime = 0.0;
    double theta = 0.0;
    double u_over_j = 0.0;
    double u3 = 0.0;
    double u4 = 0.0;
    double p_dec = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int skipped = 0;  // grid points with no decoupling solution
};

SweepResult sweep_pdec(const std::vector<int>& k_list, const std::vector<double>& theta_prime_grid,
                       double u3, double u4);

// Minimize p_dec over (u3, u4) in [lo, hi]^2: 41 x 41 coarse scan, then
// Nelder-Mead with the objective clamped to the box.  Deterministic.
struct TuneResult {
    double u3 = 0.0;
    double u4 = 0.0;
    double p_dec = 0.0;
    int evaluations = 0;
};

TuneResult tune_interactions(double theta_prime, int k, double lo = 0.0, double hi = 2.0);

}  // namespace floq
