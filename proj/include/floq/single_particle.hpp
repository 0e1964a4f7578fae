#pragma once

#include <Eigen/Dense>
#include <complex>

#include "floq/lattice.hpp"

namespace floq {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Evolution over one step, exp(-i H_step tau) with tau = theta.  Each link
// contributes a 2x2 block [[cos th, i sin th e^{i phi}], [i sin th e^{-i phi},
// cos th]]; uncoupled sites stay untouched.
MatrixXcd step_unitary(const HoppingStep& step, double theta, int n_sites);

// Ordered product over one period, last step leftmost.
MatrixXcd floquet_operator(const HoppingSchedule& schedule, double theta);

// Bloch-reduced Floquet operator: wrapping links acquire the extra phase
// k_x * wrap_x + k_y * wrap_y on top of their stored one.  Quasimomenta are
// phases per repeated block, so k in [0, 2*pi) spans the zone.
MatrixXcd bloch_floquet_operator(const HoppingSchedule& schedule, double theta,
                                 double k_x, double k_y);

// Cylinder version (requires boundary == cylinder_y and ly == 2: one
// two-row supercell repeated around the cylinder).
MatrixXcd bloch_floquet_operator(const HoppingSchedule& schedule, double theta, double k_y);

// Eigenpairs of a Floquet operator.  eps = -arg(lambda) / 2*pi in (-1/2, 1/2],
// units of the drive frequency Omega = 2*pi/T, ascending; vectors holds the
// matching orthonormal eigenvectors as columns.
struct QuasiEnergySpectrum {
    VectorXd eps;
    MatrixXcd vectors;
};

// Schur-based; unitarity of the input makes the Schur form diagonal.  Throws
// if any eigenpair residual ||U v - lambda v|| exceeds 1e-8 (non-unitary or
// defective input).
QuasiEnergySpectrum quasienergies(const MatrixXcd& u);

// Probability carried by the two outermost columns on both sides together.
double edge_weight(const VectorXcd& state, const LatticeSpec& spec);

struct EdgeWeights {
    double left = 0.0;
    double right = 0.0;
};
EdgeWeights edge_side_weights(const VectorXcd& state, const LatticeSpec& spec);

// Localized on a single side: at least half the weight within two columns of
// one edge.
bool is_edge_state(const VectorXcd& state, const LatticeSpec& spec);

}  // namespace floq
