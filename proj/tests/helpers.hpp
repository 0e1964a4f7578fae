#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace testutil {

constexpr double pi = std::numbers::pi;

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

template <typename M>
double unitarity_defect(const M& u) {
    return (u.adjoint() * u - M::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

inline double unitarity_defect_dyn(const Eigen::MatrixXcd& u) {
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

}  // namespace testutil
