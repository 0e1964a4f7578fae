#include "floq/chern.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace floq {

namespace {

double berry_flux_sum(const HoppingSchedule& cell, double theta, double eps_lo, double eps_hi,
                      int grid) {
    const int dim = cell.spec.n_sites();
    std::vector<MatrixXcd> frames(static_cast<size_t>(grid) * grid);
    int n_sel = -1;
    for (int a = 0; a < grid; ++a) {
        for (int b = 0; b < grid; ++b) {
            const double kx = 2.0 * std::numbers::pi * a / grid;
            const double ky = 2.0 * std::numbers::pi * b / grid;
            QuasiEnergySpectrum sp = quasienergies(bloch_floquet_operator(cell, theta, kx, ky));
            std::vector<int> sel;
            for (int m = 0; m < dim; ++m)
                if (sp.eps(m) > eps_lo && sp.eps(m) <= eps_hi) sel.push_back(m);
            if (n_sel < 0) n_sel = static_cast<int>(sel.size());
            if (static_cast<int>(sel.size()) != n_sel)
                throw std::runtime_error(
                    "chern_number: window edge crosses a band (state count varies over the zone)");
            MatrixXcd f(dim, sel.size());
            for (size_t c = 0; c < sel.size(); ++c) f.col(c) = sp.vectors.col(sel[c]);
            frames[a * grid + b] = std::move(f);
        }
    }
    if (n_sel == 0) throw std::runtime_error("chern_number: empty quasienergy window");
    auto at = [&](int a, int b) -> const MatrixXcd& {
        return frames[((a % grid + grid) % grid) * grid + ((b % grid + grid) % grid)];
    };
    double total = 0.0;
    for (int a = 0; a < grid; ++a) {
        for (int b = 0; b < grid; ++b) {
            std::complex<double> u1 = (at(a, b).adjoint() * at(a + 1, b)).determinant();
            std::complex<double> u2 = (at(a + 1, b).adjoint() * at(a + 1, b + 1)).determinant();
            std::complex<double> u3 = (at(a + 1, b + 1).adjoint() * at(a, b + 1)).determinant();
            std::complex<double> u4 = (at(a, b + 1).adjoint() * at(a, b)).determinant();
            total += std::arg(u1 * u2 * u3 * u4);
        }
    }
    return total / (2.0 * std::numbers::pi);
}

}  // namespace

int chern_number(const HoppingSchedule& cell, double theta, double eps_lo, double eps_hi,
                 int grid) {
    if (cell.spec.boundary != Boundary::torus)
        throw std::invalid_argument("boundary: chern_number needs a torus supercell");
    if (cell.spec.lx != 2 || cell.spec.ly != 2)
        throw std::invalid_argument("lx/ly: chern_number expects the two-by-two supercell");
    if (grid < 4) throw std::invalid_argument("grid: too coarse");
    const double coarse = berry_flux_sum(cell, theta, eps_lo, eps_hi, grid);
    const double fine = berry_flux_sum(cell, theta, eps_lo, eps_hi, 2 * grid);
    const long int_coarse = std::lround(coarse);
    const long int_fine = std::lround(fine);
    if (std::abs(coarse - int_coarse) > 0.05 || std::abs(fine - int_fine) > 0.05 ||
        int_coarse != int_fine)
        throw std::runtime_error(
            "chern_number: refinement inconsistent (" + std::to_string(coarse) + " vs " +
            std::to_string(fine) + "), window likely touches a gap closing");
    return static_cast<int>(int_fine);
}

}  // namespace floq
