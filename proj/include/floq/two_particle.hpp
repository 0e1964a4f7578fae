#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "floq/lattice.hpp"

namespace floq {

using SparseXcd = Eigen::SparseMatrix<std::complex<double>>;

// Raised where a requested decoupling point does not exist.
struct NoSolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symmetric two-boson basis |l1 l2>, l1 <= l2, dim = N(N+1)/2.
// index(l, l) is the doublon on site l.
class TwoParticleBasis {
public:
    explicit TwoParticleBasis(int n_sites);

    int n_sites() const { return n_; }
    int dim() const { return n_ * (n_ + 1) / 2; }

    int index(int l1, int l2) const {
        if (l1 > l2) std::swap(l1, l2);
        return l1 * n_ - l1 * (l1 + 1) / 2 + l2;
    }
    std::pair<int, int> sites(int idx) const { return pairs_[idx]; }

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;
};

// One-step evolution of two bosons on a single driven bond, on the ordered
// basis {|ii>, |ij>, |jj>}.  gamma = U * tau is the interaction phase per
// step, gamma_prime = sqrt(gamma^2 + 16 theta^2) the pair Rabi angle.  u11,
// u12, u13, u22 are the entries before the phase dressing; matrix() applies
// the hopping-phase pattern (e^{i phi}, e^{2 i phi}) and the global
// e^{-i gamma / 2}.
struct PairBlock {
    double theta = 0.0;
    double gamma = 0.0;
    double gamma_prime = 0.0;
    double phi = 0.0;
    std::complex<double> u11, u12, u13, u22;

    Eigen::Matrix3cd matrix() const;
};

PairBlock pair_block(double theta, double gamma, double phi);

// Interaction-to-hopping ratio U/J that freezes pair breaking after each
// step: (U/J)^2 = 4 k^2 / (theta/pi)^2 - 16, nonnegative root.  Throws
// NoSolutionError for theta > k*pi/2.
double decoupling_ratio(double theta, int k);

enum class Branch { plus, minus };

// Effective single-particle drive obeyed by the doublon at a decoupling
// point: theta' = (pi/2) (mod(k,2) +- sqrt(k^2 - (2 theta/pi)^2)) folded into
// [0, pi), phi' = 2 phi.  The branch is fixed by matching the exact reduced
// 2x2 doublon block of the pair evolution.
struct DecouplingSolution {
    int k = 0;
    double theta = 0.0;
    double u_over_j = 0.0;
    double theta_prime = 0.0;
    double phi_prime = 0.0;
    Branch branch = Branch::plus;
};

DecouplingSolution effective_parameters(double theta, int k, double phi);

// Two-boson evolution over one step.  Pairs on a driven bond evolve by the
// 3x3 pair block; a boson on a driven bond with a spectator elsewhere hops by
// the single-particle 2x2; a doublon resting on an uncoupled site picks up
// e^{-i gamma}; everything else is inert.
SparseXcd two_particle_step_unitary(const HoppingStep& step, double theta, double gamma,
                                    const TwoParticleBasis& basis);

// P U_2(T) P on the doublon subspace.  Unitary exactly at a decoupling point;
// its deviation from unitarity measures pair-breaking leakage per period.
Eigen::MatrixXcd doublon_projected_floquet(const HoppingSchedule& schedule, double theta,
                                           double gamma);

// Large-U behaviour of the effective angle: |theta' mod pi| -> 2 J theta /
// |U| (the J_eff = 2 J^2/U superexchange scale times tau).
struct AsymptoteRow {
    int k = 0;
    double u_over_j = 0.0;
    double theta_prime_folded = 0.0;
    double asymptote = 0.0;
    double rel_err = 0.0;
};

std::vector<AsymptoteRow> strong_u_asymptote_check(double theta, const std::vector<int>& k_list);

}  // namespace floq
