#include "floq/two_particle.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace floq {

namespace {
using cxd = std::complex<double>;
constexpr cxd I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
}  // namespace

TwoParticleBasis::TwoParticleBasis(int n_sites) : n_(n_sites) {
    pairs_.reserve(dim());
    for (int l1 = 0; l1 < n_; ++l1)
        for (int l2 = l1; l2 < n_; ++l2) pairs_.emplace_back(l1, l2);
}

Eigen::Matrix3cd PairBlock::matrix() const {
    const cxd e = std::exp(-0.5 * I * gamma);
    const cxd p = std::exp(I * phi);
    Eigen::Matrix3cd m;
    m << u11, u12 * p, u13 * p * p,
         u12 / p, u22, u12 * p,
         u13 / (p * p), u12 / p, u11;
    return e * m;
}

PairBlock pair_block(double theta, double gamma, double phi) {
    PairBlock b;
    b.theta = theta;
    b.gamma = gamma;
    b.phi = phi;
    const double gp = std::sqrt(gamma * gamma + 16.0 * theta * theta);
    b.gamma_prime = gp;
    // sin(gp/2)/gp -> 1/2 as gp -> 0
    const double sinc_half = gp < 1e-12 ? 0.5 : std::sin(0.5 * gp) / gp;
    const double c = std::cos(0.5 * gp);
    const cxd ig = I * gamma * sinc_half;
    const cxd e = std::exp(-0.5 * I * gamma);
    b.u11 = 0.5 * (e + c - ig);
    b.u12 = I * 2.0 * std::sqrt(2.0) * theta * sinc_half;
    b.u13 = 0.5 * (-e + c - ig);
    b.u22 = c + ig;
    return b;
}

double decoupling_ratio(double theta, int k) {
    if (k < 1) throw NoSolutionError("k: decoupling index must be >= 1");
    if (theta <= 0.0) throw NoSolutionError("theta: must be positive");
    const double r = theta / pi;
    const double v = 4.0 * k * k / (r * r) - 16.0;
    if (v < 0.0)
        throw NoSolutionError("no solution: theta > k*pi/2 leaves no real U/J at this k");
    return std::sqrt(v);
}

namespace {

// theta' on the physical (+) branch, folded into [0, pi)
double theta_prime_plus(double theta, int k) {
    const double r = 2.0 * theta / pi;
    const double s = std::sqrt(std::max(k * k - r * r, 0.0));
    double tp = std::fmod((pi / 2.0) * ((k % 2) + s), pi);
    if (tp < 0.0) tp += pi;
    return tp;
}

double theta_prime_minus(double theta, int k) {
    const double r = 2.0 * theta / pi;
    const double s = std::sqrt(std::max(k * k - r * r, 0.0));
    double tp = std::fmod((pi / 2.0) * ((k % 2) - s), pi);
    if (tp < 0.0) tp += pi;
    return tp;
}

}  // namespace

DecouplingSolution effective_parameters(double theta, int k, double phi) {
    DecouplingSolution sol;
    sol.k = k;
    sol.theta = theta;
    sol.u_over_j = decoupling_ratio(theta, k);
    sol.phi_prime = 2.0 * phi;

    // exact reduced doublon block of the pair evolution at the decoupling
    // point: rows/cols {|ii>, |jj>} of the 3x3 (the |ij> channel detaches)
    const Eigen::Matrix3cd m = pair_block(theta, sol.u_over_j * theta, phi).matrix();
    const cxd b11 = m(0, 0), b12 = m(0, 2);
    // match e^{i d} [[cos t', i sin t' e^{i phi'}], [., cos t']], t' in [0, pi)
    double tp, d;
    if (std::abs(b12) < 1e-13) {
        d = std::arg(b11);
        tp = 0.0;
    } else {
        d = std::arg(b12 / (I * std::exp(I * sol.phi_prime)));
        const double c = (b11 * std::exp(-I * d)).real();
        tp = std::atan2(std::abs(b12), c);
        if (tp >= pi - 1e-13) tp = 0.0;  // cos t' = -1 folds to t' = 0 with d -> d + pi
    }
    sol.theta_prime = tp;

    const double plus = theta_prime_plus(theta, k);
    const double minus = theta_prime_minus(theta, k);
    auto dist = [](double a, double b) {
        double d0 = std::abs(a - b);
        return std::min(d0, std::abs(d0 - pi));
    };
    if (dist(tp, plus) <= dist(tp, minus))
        sol.branch = Branch::plus;
    else
        sol.branch = Branch::minus;
    if (std::min(dist(tp, plus), dist(tp, minus)) > 1e-6)
        throw std::runtime_error("effective_parameters: reduced block matches neither branch");
    return sol;
}

SparseXcd two_particle_step_unitary(const HoppingStep& step, double theta, double gamma,
                                    const TwoParticleBasis& basis) {
    const int n = basis.n_sites();
    const int dim = basis.dim();
    // cluster decomposition of the step: each driven bond, each idle site
    std::vector<int> cluster(n, -1);
    std::vector<const Link*> bond_of_cluster;
    for (const Link& l : step.links) {
        cluster[l.i] = cluster[l.j] = static_cast<int>(bond_of_cluster.size());
        bond_of_cluster.push_back(&l);
    }
    const double c = std::cos(theta), s = std::sin(theta);

    // single-particle amplitudes out of site l within its cluster, as
    // (target, amplitude) pairs
    auto amps = [&](int l, std::array<std::pair<int, cxd>, 2>& out) -> int {
        const int cl = cluster[l];
        if (cl < 0) {
            out[0] = {l, 1.0};
            return 1;
        }
        const Link& b = *bond_of_cluster[cl];
        const cxd e = std::exp(I * b.phase);
        if (l == b.i) {
            out[0] = {b.i, c};
            out[1] = {b.j, I * s * std::conj(e)};
        } else {
            out[0] = {b.j, c};
            out[1] = {b.i, I * s * e};
        }
        return 2;
    };

    std::vector<Eigen::Triplet<cxd>> trip;
    trip.reserve(static_cast<size_t>(dim) * 4);
    for (int col = 0; col < dim; ++col) {
        const auto [l1, l2] = basis.sites(col);
        const int c1 = cluster[l1], c2 = cluster[l2];
        const bool same = (c1 == c2) && !(c1 < 0 && l1 != l2);
        if (c1 < 0 && c2 < 0 && l1 == l2) {
            // doublon resting on an undriven site: interaction phase only
            trip.emplace_back(col, col, std::exp(-I * gamma));
        } else if (c1 >= 0 && same) {
            // both bosons on the same driven bond: 3x3 pair block
            const Link& b = *bond_of_cluster[c1];
            const PairBlock pb = pair_block(theta, gamma, b.phase);
            const Eigen::Matrix3cd m = pb.matrix();
            const std::array<int, 3> idx = {basis.index(b.i, b.i), basis.index(b.i, b.j),
                                            basis.index(b.j, b.j)};
            int kk = -1;
            for (int t = 0; t < 3; ++t)
                if (idx[t] == col) kk = t;
            for (int r = 0; r < 3; ++r) trip.emplace_back(idx[r], col, m(r, kk));
        } else {
            // independent clusters: product of single-particle amplitudes
            std::array<std::pair<int, cxd>, 2> a1, a2;
            const int n1 = amps(l1, a1), n2 = amps(l2, a2);
            for (int p = 0; p < n1; ++p)
                for (int q = 0; q < n2; ++q)
                    trip.emplace_back(basis.index(a1[p].first, a2[q].first), col,
                                      a1[p].second * a2[q].second);
        }
    }
    SparseXcd u(dim, dim);
    u.setFromTriplets(trip.begin(), trip.end());
    return u;
}

Eigen::MatrixXcd doublon_projected_floquet(const HoppingSchedule& schedule, double theta,
                                           double gamma) {
    const int n = schedule.spec.n_sites();
    TwoParticleBasis basis(n);
    Eigen::MatrixXcd u2 = Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
    for (const HoppingStep& step : schedule.steps)
        u2 = two_particle_step_unitary(step, theta, gamma, basis) * u2;
    Eigen::MatrixXcd p(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) p(a, b) = u2(basis.index(a, a), basis.index(b, b));
    return p;
}

std::vector<AsymptoteRow> strong_u_asymptote_check(double theta, const std::vector<int>& k_list) {
    std::vector<AsymptoteRow> rows;
    rows.reserve(k_list.size());
    for (int k : k_list) {
        AsymptoteRow r;
        r.k = k;
        r.u_over_j = decoupling_ratio(theta, k);
        double m = theta_prime_plus(theta, k);
        r.theta_prime_folded = std::min(m, pi - m);
        r.asymptote = 2.0 * theta / r.u_over_j;
        r.rel_err = std::abs(r.theta_prime_folded - r.asymptote) / r.asymptote;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace floq
