#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "floq/lattice.hpp"
#include "floq/two_particle.hpp"

// Slow, independent reference implementations.  The production code builds
// step unitaries from closed forms; everything here goes through explicit
// Hamiltonians and exp(-i H t) instead, so agreement is a real cross-check
// and not a tautology.
namespace floq::reference {

using Eigen::MatrixXcd;

// exp(-i h t) for Hermitian h, by eigendecomposition.
MatrixXcd expm_hermitian(const MatrixXcd& h, double t);

// Single-particle Hamiltonian of one step: H(i,j) = -J e^{i phase}.
MatrixXcd step_hamiltonian(const HoppingStep& step, int n_sites);

// Two bosons on one bond, basis {|ii>, |ij>, |jj>}: on-site interaction u on
// the doubly occupied states, bosonic-enhanced hopping -sqrt(2) J e^{+-i phi}.
MatrixXcd pair_hamiltonian(double u_over_j, double phi);

// Full two-boson Hamiltonian of one step on the symmetric basis, built from
// ladder-operator matrix elements.
MatrixXcd two_particle_step_hamiltonian(const HoppingStep& step, double u_over_j,
                                        const TwoParticleBasis& basis);

struct CheckResult {
    std::string name;
    bool pass = false;
    double err = 0.0;
    double millis = 0.0;
};

// Cross-checks run by the command-line `validate` subcommand: closed-form
// pair block vs 3x3 exponential, step assembly vs the brute-force two-boson
// exponential on a 3x3 lattice, factorization of non-interacting dynamics,
// Chern-number grid refinement.
std::vector<CheckResult> run_validation_suite();

}  // namespace floq::reference
