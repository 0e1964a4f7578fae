#include "floq/reference.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "floq/chern.hpp"
#include "floq/dynamics.hpp"
#include "floq/single_particle.hpp"

namespace floq::reference {

namespace {
using cxd = std::complex<double>;
constexpr cxd I{0.0, 1.0};
}  // namespace

MatrixXcd expm_hermitian(const MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (int m = 0; m < h.rows(); ++m) phases(m) = std::exp(-I * es.eigenvalues()(m) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd step_hamiltonian(const HoppingStep& step, int n_sites) {
    MatrixXcd h = MatrixXcd::Zero(n_sites, n_sites);
    for (const Link& l : step.links) {
        h(l.i, l.j) += -std::exp(I * l.phase);
        h(l.j, l.i) += -std::exp(-I * l.phase);
    }
    return h;
}

MatrixXcd pair_hamiltonian(double u_over_j, double phi) {
    const cxd hop = -std::sqrt(2.0) * std::exp(I * phi);
    MatrixXcd h(3, 3);
    h << u_over_j, hop, 0.0,
         std::conj(hop), 0.0, hop,
         0.0, std::conj(hop), u_over_j;
    return h;
}

MatrixXcd two_particle_step_hamiltonian(const HoppingStep& step, double u_over_j,
                                        const TwoParticleBasis& basis) {
    const int dim = basis.dim();
    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    for (int l = 0; l < basis.n_sites(); ++l) h(basis.index(l, l), basis.index(l, l)) += u_over_j;
    // -J e^{i phase} b_i^dag b_j + h.c., applied with bosonic sqrt factors
    for (const Link& l : step.links) {
        for (const auto& [a, b, coeff] :
             {std::tuple<int, int, cxd>{l.i, l.j, -std::exp(I * l.phase)},
              std::tuple<int, int, cxd>{l.j, l.i, -std::exp(-I * l.phase)}}) {
            for (int col = 0; col < dim; ++col) {
                const auto [l1, l2] = basis.sites(col);
                std::map<int, int> occ;
                occ[l1] += 1;
                occ[l2] += 1;
                if (occ[b] == 0) continue;
                double f = std::sqrt(static_cast<double>(occ[b]));
                occ[b] -= 1;
                f *= std::sqrt(static_cast<double>(occ[a] + 1));
                occ[a] += 1;
                std::vector<int> sites;
                for (const auto& [s, k] : occ)
                    for (int rep = 0; rep < k; ++rep) sites.push_back(s);
                h(basis.index(sites[0], sites[1]), col) += coeff * f;
            }
        }
    }
    return h;
}

namespace {

CheckResult timed(const std::string& name, double err, double tol,
                  std::chrono::steady_clock::time_point t0) {
    const auto t1 = std::chrono::steady_clock::now();
    return {name, err <= tol, err,
            std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
    std::vector<CheckResult> out;
    std::mt19937 rng(20240817);  // fixed seed: reproducible reports
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    constexpr double pi = std::numbers::pi;

    {  // closed-form pair block against the 3x3 exponential
        auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int trial = 0; trial < 24; ++trial) {
            const double theta = uni(0.05, 3.0);
            const double gamma = uni(0.0, 8.0);
            const double phi = uni(-pi, pi);
            const MatrixXcd want = expm_hermitian(pair_hamiltonian(gamma / theta, phi), theta);
            const Eigen::Matrix3cd got = pair_block(theta, gamma, phi).matrix();
            worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
        }
        out.push_back(timed("pair_block vs 3x3 exponential", worst, 1e-12, t0));
    }

    {  // step assembly against the brute-force two-boson exponential, 3x3 lattice
        auto t0 = std::chrono::steady_clock::now();
        const LatticeSpec spec{3, 3, Boundary::open};
        const HoppingSchedule sched = build_afi_schedule(spec);
        const TwoParticleBasis basis(spec.n_sites());
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const double theta = uni(0.1, 3.0);
            const double gamma = uni(0.0, 8.0);
            for (HoppingStep step : sched.steps) {
                for (Link& l : step.links) l.phase = uni(-pi, pi);
                const MatrixXcd want =
                    expm_hermitian(two_particle_step_hamiltonian(step, gamma / theta, basis), theta);
                const MatrixXcd got =
                    MatrixXcd(two_particle_step_unitary(step, theta, gamma, basis));
                worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
            }
        }
        out.push_back(timed("two-boson step vs brute-force exponential", worst, 1e-10, t0));
    }

    {  // gamma = 0 evolution stays a symmetrized product of one-particle states
        auto t0 = std::chrono::steady_clock::now();
        const LatticeSpec spec{5, 4, Boundary::open};
        const HoppingSchedule sched = build_afi_schedule(spec);
        const TwoParticleBasis basis(spec.n_sites());
        const double theta = 0.7 * pi;
        VectorXcd phi = VectorXcd::Zero(spec.n_sites());
        phi(0) = 1.0;
        Trajectory traj = evolve(doublon_state(basis, 0), sched, theta, 0.0, 6, 6);
        const MatrixXcd u1 = floquet_operator(sched, theta);
        for (int t = 0; t < 6; ++t) phi = (u1 * phi).eval();
        const VectorXcd& psi = traj.snapshots.back().state;
        double worst = 0.0;
        for (int idx = 0; idx < basis.dim(); ++idx) {
            const auto [l1, l2] = basis.sites(idx);
            const cxd want = phi(l1) * phi(l2) * (l1 == l2 ? 1.0 : std::sqrt(2.0));
            worst = std::max(worst, std::abs(psi(idx) - want));
        }
        out.push_back(timed("non-interacting factorization", worst, 1e-10, t0));
    }

    {  // Chern numbers stable under grid refinement, opposite for the two bands
        auto t0 = std::chrono::steady_clock::now();
        const HoppingSchedule cell = build_hhf_schedule({2, 2, Boundary::torus}, 0.5);
        const int lower = chern_number(cell, pi / 4.0, -0.5, 0.0, 16);
        const int upper = chern_number(cell, pi / 4.0, 0.0, 0.5, 16);
        const double err = std::abs(lower + upper) + std::abs(std::abs(lower) - 1.0);
        out.push_back(timed("Chern grid refinement (16 -> 32)", err, 0.0, t0));
    }

    return out;
}

}  // namespace floq::reference
