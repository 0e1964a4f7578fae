#include "floq/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace floq {

VectorXcd doublon_state(const TwoParticleBasis& basis, int site) {
    VectorXcd v = VectorXcd::Zero(basis.dim());
    v(basis.index(site, site)) = 1.0;
    return v;
}

Trajectory evolve(const VectorXcd& initial, const HoppingSchedule& schedule, double theta,
                  double gamma, int n_periods, int stride) {
    if (n_periods < 1) throw std::invalid_argument("periods: must be >= 1");
    if (stride < 1) throw std::invalid_argument("stride: must be >= 1");
    const TwoParticleBasis basis(schedule.spec.n_sites());
    if (initial.size() != basis.dim())
        throw std::invalid_argument("initial state dimension does not match the lattice");
    if (std::abs(initial.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("initial state is not normalized");

    std::vector<SparseXcd> steps;
    steps.reserve(schedule.steps.size());
    for (const HoppingStep& s : schedule.steps)
        steps.push_back(two_particle_step_unitary(s, theta, gamma, basis));

    Trajectory traj;
    traj.stride = stride;
    traj.snapshots.push_back({0.0, initial});
    VectorXcd psi = initial;
    for (int t = 1; t <= n_periods; ++t) {
        for (const SparseXcd& s : steps) psi = s * psi;
        if (t % stride == 0 || t == n_periods)
            traj.snapshots.push_back({static_cast<double>(t), psi});
    }
    return traj;
}

VectorXd doublon_density(const VectorXcd& state, const TwoParticleBasis& basis) {
    VectorXd a(basis.n_sites());
    for (int l = 0; l < basis.n_sites(); ++l) a(l) = std::norm(state(basis.index(l, l)));
    return a;
}

double doublon_overlap(const VectorXcd& state, const TwoParticleBasis& basis) {
    return doublon_density(state, basis).sum();
}

Eigen::MatrixXd amplitude_matrix(const VectorXcd& state, const TwoParticleBasis& basis) {
    const int n = basis.n_sites();
    Eigen::MatrixXd m(n, n);
    for (int l1 = 0; l1 < n; ++l1) {
        m(l1, l1) = std::norm(state(basis.index(l1, l1)));
        for (int l2 = l1 + 1; l2 < n; ++l2)
            m(l1, l2) = m(l2, l1) = 0.5 * std::norm(state(basis.index(l1, l2)));
    }
    return m;
}

double schmidt_entropy(const VectorXcd& state, const TwoParticleBasis& basis) {
    const int n = basis.n_sites();
    MatrixXcd c(n, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int l1 = 0; l1 < n; ++l1) {
        c(l1, l1) = state(basis.index(l1, l1));
        for (int l2 = l1 + 1; l2 < n; ++l2)
            c(l1, l2) = c(l2, l1) = state(basis.index(l1, l2)) * inv_sqrt2;
    }
    Eigen::JacobiSVD<MatrixXcd> svd(c);
    const VectorXd sv = svd.singularValues();
    const double total = sv.squaredNorm();
    double ent = 0.0;
    for (int m = 0; m < sv.size(); ++m) {
        const double p = sv(m) * sv(m) / total;
        if (p > 0.0) ent -= p * std::log(p);
    }
    return ent;
}

Centroid density_centroid(const VectorXd& site_density, const LatticeSpec& spec) {
    double w = 0.0, sx = 0.0, sy = 0.0;
    for (int i = 0; i < spec.n_sites(); ++i) {
        w += site_density(i);
        sx += site_density(i) * spec.site_x(i);
        sy += site_density(i) * spec.site_y(i);
    }
    if (w <= 0.0) throw std::invalid_argument("density_centroid: zero total weight");
    return {sx / w, sy / w};
}

}  // namespace floq
