#include "floq/single_particle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace floq {

namespace {

using cxd = std::complex<double>;
constexpr cxd I{0.0, 1.0};

void add_link_block(MatrixXcd& u, const Link& l, double theta, double extra_phase) {
    const double c = std::cos(theta), s = std::sin(theta);
    const cxd e = std::exp(I * (l.phase + extra_phase));
    u(l.i, l.i) = c;
    u(l.j, l.j) = c;
    u(l.i, l.j) = I * s * e;
    u(l.j, l.i) = I * s * std::conj(e);
}

}  // namespace

MatrixXcd step_unitary(const HoppingStep& step, double theta, int n_sites) {
    MatrixXcd u = MatrixXcd::Identity(n_sites, n_sites);
    for (const Link& l : step.links) add_link_block(u, l, theta, 0.0);
    return u;
}

MatrixXcd floquet_operator(const HoppingSchedule& schedule, double theta) {
    const int n = schedule.spec.n_sites();
    MatrixXcd u = MatrixXcd::Identity(n, n);
    for (const HoppingStep& step : schedule.steps) u = step_unitary(step, theta, n) * u;
    return u;
}

MatrixXcd bloch_floquet_operator(const HoppingSchedule& schedule, double theta,
                                 double k_x, double k_y) {
    const int n = schedule.spec.n_sites();
    MatrixXcd u = MatrixXcd::Identity(n, n);
    for (const HoppingStep& step : schedule.steps) {
        MatrixXcd s = MatrixXcd::Identity(n, n);
        for (const Link& l : step.links)
            add_link_block(s, l, theta, k_x * (l.wrap_x ? 1.0 : 0.0) + k_y * (l.wrap_y ? 1.0 : 0.0));
        u = s * u;
    }
    return u;
}

MatrixXcd bloch_floquet_operator(const HoppingSchedule& schedule, double theta, double k_y) {
    if (schedule.spec.boundary != Boundary::cylinder_y)
        throw std::invalid_argument("boundary: k_y-resolved operator needs cylinder_y");
    if (schedule.spec.ly != 2)
        throw std::invalid_argument("ly: cylinder reduction uses a single two-row supercell");
    return bloch_floquet_operator(schedule, theta, 0.0, k_y);
}

QuasiEnergySpectrum quasienergies(const MatrixXcd& u) {
    const int n = static_cast<int>(u.rows());
    Eigen::ComplexSchur<MatrixXcd> schur(u);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("quasienergies: Schur decomposition failed");
    // for a unitary (normal) operator the Schur form is diagonal and the Schur
    // basis is the eigenbasis, orthonormal by construction
    const MatrixXcd& q = schur.matrixU();
    Eigen::VectorXcd lambda = schur.matrixT().diagonal();
    for (int m = 0; m < n; ++m) {
        double res = (u * q.col(m) - lambda(m) * q.col(m)).cwiseAbs().maxCoeff();
        if (res > 1e-8)
            throw std::runtime_error("quasienergies: eigenpair residual " + std::to_string(res) +
                                     " (operator not unitary?)");
    }
    VectorXd eps(n);
    for (int m = 0; m < n; ++m) {
        double e = -std::arg(lambda(m)) / (2.0 * std::numbers::pi);
        if (e <= -0.5) e += 1.0;  // branch (-1/2, 1/2]
        eps(m) = e;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eps(a) < eps(b); });
    QuasiEnergySpectrum out;
    out.eps.resize(n);
    out.vectors.resize(n, n);
    for (int m = 0; m < n; ++m) {
        out.eps(m) = eps(order[m]);
        out.vectors.col(m) = q.col(order[m]);
    }
    return out;
}

EdgeWeights edge_side_weights(const VectorXcd& state, const LatticeSpec& spec) {
    EdgeWeights w;
    for (int i = 0; i < spec.n_sites(); ++i) {
        const double p = std::norm(state(i));
        const int x = spec.site_x(i);
        if (x < 2) w.left += p;
        if (x >= spec.lx - 2) w.right += p;
    }
    return w;
}

double edge_weight(const VectorXcd& state, const LatticeSpec& spec) {
    const EdgeWeights w = edge_side_weights(state, spec);
    return w.left + w.right;
}

bool is_edge_state(const VectorXcd& state, const LatticeSpec& spec) {
    const EdgeWeights w = edge_side_weights(state, spec);
    return w.left >= 0.5 || w.right >= 0.5;
}

}  // namespace floq
