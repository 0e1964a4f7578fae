#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "floq/reference.hpp"
#include "floq/single_particle.hpp"
#include "floq/two_particle.hpp"
#include "helpers.hpp"

using namespace floq;
using testutil::pi;
using cxd = std::complex<double>;

TEST_CASE("basis indexing is a bijection") {
    const TwoParticleBasis basis(9);
    CHECK(basis.dim() == 45);
    int count = 0;
    for (int l1 = 0; l1 < 9; ++l1)
        for (int l2 = l1; l2 < 9; ++l2) {
            const int idx = basis.index(l1, l2);
            CHECK(idx == count++);
            CHECK(basis.sites(idx) == std::make_pair(l1, l2));
            CHECK(basis.index(l2, l1) == idx);  // order-insensitive
        }
    CHECK(count == basis.dim());
}

TEST_CASE("pair block against the exponential of the bond Hamiltonian") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> th(0.05, 3.0), ga(0.0, 8.0), ph(-pi, pi);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = th(rng), gamma = ga(rng), phi = ph(rng);
        CAPTURE(theta);
        CAPTURE(gamma);
        CAPTURE(phi);
        const Eigen::Matrix3cd got = pair_block(theta, gamma, phi).matrix();
        const MatrixXcd want =
            reference::expm_hermitian(reference::pair_hamiltonian(gamma / theta, phi), theta);
        CHECK(testutil::max_abs_diff(got, want) < 1e-12);
        CHECK(testutil::unitarity_defect_dyn(got) < 1e-12);
    }
}

TEST_CASE("free pair block is the symmetrized square of the hop") {
    const double theta = 0.9, phi = -0.4;
    const Eigen::Matrix3cd m = pair_block(theta, 0.0, phi).matrix();
    const double c = std::cos(theta), s = std::sin(theta);
    // <ij| U |ii> = sqrt(2) cos(theta) * i sin(theta) e^{-i phi}
    CHECK(std::abs(m(1, 0) - std::sqrt(2.0) * c * cxd(0, s) * std::exp(cxd(0, -phi))) < 1e-13);
    CHECK(std::abs(m(0, 0) - c * c) < 1e-13);
    CHECK(std::abs(m(2, 0) - cxd(0, s) * cxd(0, s) * std::exp(cxd(0, -2 * phi))) < 1e-13);
}

TEST_CASE("pair transfer switches off exactly at the decoupling point") {
    const double theta = 0.8 * pi;
    const double gamma = 3.0 * theta;  // U/J = 3 at k = 2: gamma' = 4 pi
    CHECK(std::abs(pair_block(theta, gamma, 0.0).matrix()(0, 1)) < 1e-12);
    CHECK(std::abs(pair_block(theta, gamma * 1.01, 0.0).matrix()(0, 1)) > 1e-4);
}

TEST_CASE("decoupling ratio") {
    CHECK(decoupling_ratio(0.8 * pi, 2) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(decoupling_ratio(pi / 2, 1) == doctest::Approx(0.0));
    CHECK(decoupling_ratio(0.4 * pi, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(decoupling_ratio(0.9 * pi, 1), NoSolutionError);
    CHECK_THROWS_AS(decoupling_ratio(0.7, 0), NoSolutionError);
}

TEST_CASE("effective drive parameters") {
    SUBCASE("named points") {
        CHECK(effective_parameters(0.8 * pi, 2, 0.0).theta_prime ==
              doctest::Approx(0.6 * pi).epsilon(1e-12));
        CHECK(effective_parameters(pi / 2, 1, 0.0).theta_prime == doctest::Approx(pi / 2));
        CHECK(effective_parameters(0.6 * pi, 2, 0.0).theta_prime == doctest::Approx(0.8 * pi));
    }
    SUBCASE("doubled hopping phase") {
        const auto sol = effective_parameters(0.8 * pi, 2, 0.35);
        CHECK(sol.phi_prime == doctest::Approx(0.7));
    }
    SUBCASE("reduced block matches the branch formula across the plane") {
        for (int k = 1; k <= 4; ++k)
            for (double f : {0.11, 0.25, 0.4, 0.49})
                if (f * 2 <= k) {
                    const double theta = f * pi * k;  // stay inside theta <= k pi/2
                    const auto sol = effective_parameters(theta, k, 0.2);
                    const double r = 2.0 * theta / pi;
                    const double s = std::sqrt(k * k - r * r);
                    const double sign = sol.branch == Branch::plus ? 1.0 : -1.0;
                    double formula = std::fmod((pi / 2) * ((k % 2) + sign * s), pi);
                    if (formula < 0) formula += pi;
                    CHECK(sol.theta_prime == doctest::Approx(formula).epsilon(1e-10));
                }
    }
}

TEST_CASE("one-step two-boson evolution against brute force") {
    const LatticeSpec spec{3, 3, Boundary::open};
    const TwoParticleBasis basis(spec.n_sites());
    const auto sched = build_afi_schedule(spec);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> th(0.1, 3.0), ga(0.0, 8.0), ph(-pi, pi);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const double theta = th(rng), gamma = ga(rng);
        for (HoppingStep step : sched.steps) {
            for (Link& l : step.links) l.phase = ph(rng);
            const MatrixXcd got = MatrixXcd(two_particle_step_unitary(step, theta, gamma, basis));
            const MatrixXcd want = reference::expm_hermitian(
                reference::two_particle_step_hamiltonian(step, gamma / theta, basis), theta);
            worst = std::max(worst, testutil::max_abs_diff(got, want));
            CHECK(testutil::unitarity_defect_dyn(got) < 1e-12);
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("free two-boson step factorizes into single-particle amplitudes") {
    const LatticeSpec spec{3, 2, Boundary::open};
    const TwoParticleBasis basis(spec.n_sites());
    const auto sched = build_afi_schedule(spec);
    const double theta = 1.3;
    for (const auto& step : sched.steps) {
        const MatrixXcd u1 = step_unitary(step, theta, spec.n_sites());
        const MatrixXcd u2 = MatrixXcd(two_particle_step_unitary(step, theta, 0.0, basis));
        for (int col = 0; col < basis.dim(); ++col) {
            const auto [l1, l2] = basis.sites(col);
            for (int row = 0; row < basis.dim(); ++row) {
                const auto [m1, m2] = basis.sites(row);
                // symmetrized tensor square <m1 m2|U (x) U|l1 l2>, with the
                // sqrt(2) normalization mismatch between paired and split kets
                cxd want = u1(m1, l1) * u1(m2, l2) + (m1 == m2 ? cxd(0) : u1(m2, l1) * u1(m1, l2));
                if (l1 != l2 && m1 == m2) want *= std::sqrt(2.0);
                if (l1 == l2 && m1 != m2) want /= std::sqrt(2.0);
                CHECK(std::abs(u2(row, col) - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("idle doublon phase") {
    const LatticeSpec spec{3, 2, Boundary::open};
    const TwoParticleBasis basis(spec.n_sites());
    HoppingStep step;
    step.links.push_back({0, 1, 0.0, false, false});
    const double gamma = 2.1;
    const MatrixXcd u2 = MatrixXcd(two_particle_step_unitary(step, 0.7, gamma, basis));
    // doublon on site 4: untouched by the bond, picks up the interaction phase
    const int idx = basis.index(4, 4);
    CHECK(std::abs(u2(idx, idx) - std::exp(cxd(0, -gamma))) < 1e-14);
    // pair split over two idle sites: inert
    const int idx2 = basis.index(3, 5);
    CHECK(std::abs(u2(idx2, idx2) - 1.0) < 1e-14);
}

TEST_CASE("doublon projection of the period operator") {
    const double theta = 0.8 * pi;
    const double u_over_j = 3.0;

    SUBCASE("unitary at the decoupling point, equal to the effective drive on the torus") {
        const LatticeSpec spec{4, 4, Boundary::torus};
        const auto sched = build_afi_schedule(spec);
        const MatrixXcd p = doublon_projected_floquet(sched, theta, u_over_j * theta);
        CHECK(testutil::unitarity_defect_dyn(p) < 1e-10);

        const auto sol = effective_parameters(theta, 2, 0.0);
        const MatrixXcd u_eff = floquet_operator(sched, sol.theta_prime);
        // equality up to one global phase per period
        const cxd ratio = p(0, 1) / u_eff(0, 1);
        CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-10);
        CHECK(testutil::max_abs_diff(p, (ratio * u_eff).eval()) < 1e-10);
    }
    SUBCASE("unitary at the decoupling point on the open lattice too") {
        const auto sched = build_afi_schedule({5, 4, Boundary::open});
        const MatrixXcd p = doublon_projected_floquet(sched, theta, u_over_j * theta);
        CHECK(testutil::unitarity_defect_dyn(p) < 1e-10);
    }
    SUBCASE("detuned interaction leaks") {
        const auto sched = build_afi_schedule({4, 4, Boundary::torus});
        const MatrixXcd p = doublon_projected_floquet(sched, theta, 1.05 * u_over_j * theta);
        CHECK(testutil::unitarity_defect_dyn(p) > 1e-3);
    }
    SUBCASE("free bosons leave the doublon sector immediately") {
        const auto sched = build_afi_schedule({4, 4, Boundary::torus});
        const MatrixXcd p = doublon_projected_floquet(sched, pi / 4, 0.0);
        CHECK(testutil::unitarity_defect_dyn(p) > 0.1);
    }
}

TEST_CASE("strong interaction asymptote of the effective angle") {
    const auto rows = strong_u_asymptote_check(0.8 * pi, {10, 20, 50, 100});
    CHECK(rows[1].rel_err < 0.01);    // k = 20 within 1%
    CHECK(rows[3].rel_err < 5e-4);    // k = 100 within 0.05%
    for (size_t m = 1; m < rows.size(); ++m) CHECK(rows[m].rel_err < rows[m - 1].rel_err);
}
