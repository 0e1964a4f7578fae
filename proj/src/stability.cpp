#include "floq/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace floq {

namespace {
using cxd = std::complex<double>;
constexpr cxd I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
}  // namespace

Matrix5d QuadHamiltonian::matrix() const {
    const double ht = u3 + 3.0 * u;        // |3,1> on-site energy
    const double hq = u4 + 4.0 * u3 + 6.0 * u;  // |4,0>
    const double r6 = std::sqrt(6.0) * j;
    Matrix5d h;
    h << 2.0 * u, -r6, -r6, 0.0, 0.0,
         -r6, ht, 0.0, -2.0 * j, 0.0,
         -r6, 0.0, ht, 0.0, -2.0 * j,
         0.0, -2.0 * j, 0.0, hq, 0.0,
         0.0, 0.0, -2.0 * j, 0.0, hq;
    return h;
}

Matrix5d build_quad_hamiltonian(double j, double u, double u3, double u4) {
    return QuadHamiltonian{j, u, u3, u4}.matrix();
}

Matrix5cd quad_evolution(const Matrix5d& h, double tau) {
    Eigen::SelfAdjointEigenSolver<Matrix5d> es(h);
    Eigen::Matrix<cxd, 5, 1> phases;
    for (int m = 0; m < 5; ++m) phases(m) = std::exp(-I * es.eigenvalues()(m) * tau);
    return es.eigenvectors().cast<cxd>() * phases.asDiagonal() *
           es.eigenvectors().transpose().cast<cxd>();
}

namespace {

// effective angle on the physical branch, folded into [0, pi)
double theta_prime_of(double theta, int k) {
    const double r = 2.0 * theta / pi;
    const double s = std::sqrt(std::max(k * k - r * r, 0.0));
    double tp = std::fmod((pi / 2.0) * ((k % 2) + s), pi);
    if (tp < 0.0) tp += pi;
    return tp;
}

}  // namespace

std::vector<double> invert_theta_prime_all(double theta_prime, int k) {
    // candidate s >= 0 with (pi/2)(mod(k,2) +- s) == theta_prime (mod pi)
    const double base = 2.0 * theta_prime / pi - (k % 2);
    std::vector<double> cands;
    for (double sign : {1.0, -1.0}) {
        const double s0 = sign * base;
        double s = s0 + 2.0 * std::ceil((-s0) / 2.0 - 1e-12);
        for (; s < k + 1e-12; s += 2.0)
            if (s > -1e-12) cands.push_back(std::clamp(s, 0.0, static_cast<double>(k)));
    }
    std::vector<double> thetas;
    for (double s : cands) {
        const double th = (pi / 2.0) * std::sqrt(std::max(k * k - s * s, 0.0));
        if (th <= 1e-12) continue;
        // keep only candidates that round-trip onto the physical branch
        const double rt = theta_prime_of(th, k);
        const double d = std::abs(rt - theta_prime);
        if (d < 1e-9 || std::abs(d - pi) < 1e-9) thetas.push_back(th);
    }
    std::sort(thetas.begin(), thetas.end(), std::greater<>());
    thetas.erase(std::unique(thetas.begin(), thetas.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                 thetas.end());
    return thetas;
}

double invert_theta_prime(double theta_prime, int k) {
    const auto all = invert_theta_prime_all(theta_prime, k);
    if (all.empty())
        throw NoSolutionError("theta_prime out of range: no drive angle reaches it at this k");
    return all.front();
}

DecayResult decay_probability(double theta, int k, double u3, double u4) {
    DecayResult r;
    r.k = k;
    r.theta = theta;
    if (theta == 0.0) {
        // tau = 0: the step matrix is the identity, nothing decays; the
        // decoupling condition pushes U to infinity in this limit
        r.u_over_j = std::numeric_limits<double>::infinity();
        r.theta_prime = 0.0;
        r.p_dec = 0.0;
        return r;
    }
    r.u_over_j = decoupling_ratio(theta, k);
    r.theta_prime = theta_prime_of(theta, k);
    const Matrix5cd m = quad_evolution(build_quad_hamiltonian(1.0, r.u_over_j, u3, u4), theta);
    r.p_dec = std::clamp(1.0 - std::norm(m(0, 0)), 0.0, 1.0);
    return r;
}

SweepResult sweep_pdec(const std::vector<int>& k_list, const std::vector<double>& theta_prime_grid,
                       double u3, double u4) {
    SweepResult out;
    for (int k : k_list) {
        for (double tp : theta_prime_grid) {
            const auto thetas = invert_theta_prime_all(tp, k);
            if (thetas.empty()) {
                ++out.skipped;
                continue;
            }
            DecayResult d = decay_probability(thetas.front(), k, u3, u4);
            out.rows.push_back({k, tp, d.theta, d.u_over_j, u3, u4, d.p_dec});
        }
    }
    return out;
}

TuneResult tune_interactions(double theta_prime, int k, double lo, double hi) {
    const double theta = invert_theta_prime(theta_prime, k);
    int evals = 0;
    auto objective = [&](double a, double b) {
        a = std::clamp(a, lo, hi);
        b = std::clamp(b, lo, hi);
        ++evals;
        return decay_probability(theta, k, a, b).p_dec;
    };

    // coarse scan
    constexpr int ngrid = 41;
    double best_f = std::numeric_limits<double>::infinity();
    double best_a = lo, best_b = lo;
    for (int ia = 0; ia < ngrid; ++ia) {
        for (int ib = 0; ib < ngrid; ++ib) {
            const double a = lo + (hi - lo) * ia / (ngrid - 1);
            const double b = lo + (hi - lo) * ib / (ngrid - 1);
            const double f = objective(a, b);
            if (f < best_f) {
                best_f = f;
                best_a = a;
                best_b = b;
            }
        }
    }

    // Nelder-Mead, box enforced inside the objective
    using Vec2 = std::array<double, 2>;
    const double h = (hi - lo) / (ngrid - 1);
    std::array<Vec2, 3> x = {Vec2{best_a, best_b}, Vec2{best_a + h, best_b},
                             Vec2{best_a, best_b + h}};
    std::array<double, 3> f = {objective(x[0][0], x[0][1]), objective(x[1][0], x[1][1]),
                               objective(x[2][0], x[2][1])};
    auto order = [&]() {
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        std::array<Vec2, 3> xs = {x[idx[0]], x[idx[1]], x[idx[2]]};
        std::array<double, 3> fs = {f[idx[0]], f[idx[1]], f[idx[2]]};
        x = xs;
        f = fs;
    };
    for (int it = 0; it < 400; ++it) {
        order();
        const double size = std::max({std::abs(x[1][0] - x[0][0]) + std::abs(x[1][1] - x[0][1]),
                                      std::abs(x[2][0] - x[0][0]) + std::abs(x[2][1] - x[0][1])});
        if (size < 1e-6 && std::abs(f[2] - f[0]) < 1e-12) break;
        const Vec2 centroid = {0.5 * (x[0][0] + x[1][0]), 0.5 * (x[0][1] + x[1][1])};
        auto along = [&](double t) {
            return Vec2{centroid[0] + t * (centroid[0] - x[2][0]),
                        centroid[1] + t * (centroid[1] - x[2][1])};
        };
        const Vec2 xr = along(1.0);
        const double fr = objective(xr[0], xr[1]);
        if (fr < f[0]) {
            const Vec2 xe = along(2.0);
            const double fe = objective(xe[0], xe[1]);
            if (fe < fr) {
                x[2] = xe;
                f[2] = fe;
            } else {
                x[2] = xr;
                f[2] = fr;
            }
        } else if (fr < f[1]) {
            x[2] = xr;
            f[2] = fr;
        } else {
            const Vec2 xc = along(fr < f[2] ? 0.5 : -0.5);
            const double fc = objective(xc[0], xc[1]);
            if (fc < std::min(fr, f[2])) {
                x[2] = xc;
                f[2] = fc;
            } else {
                // shrink towards the best vertex
                for (int m = 1; m < 3; ++m) {
                    x[m] = {x[0][0] + 0.5 * (x[m][0] - x[0][0]), x[0][1] + 0.5 * (x[m][1] - x[0][1])};
                    f[m] = objective(x[m][0], x[m][1]);
                }
            }
        }
    }
    order();
    TuneResult r;
    r.u3 = std::clamp(x[0][0], lo, hi);
    r.u4 = std::clamp(x[0][1], lo, hi);
    r.p_dec = f[0];
    r.evaluations = evals;
    return r;
}

}  // namespace floq
