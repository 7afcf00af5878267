// helpers.hpp — shared numeric assertions for the test suites

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace test_helpers {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double cdist(Complex a, Complex b) { return std::abs(a - b); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

// Deterministic random complex vector with entries in the unit disc
inline Vector random_state(std::mt19937_64& rng, int dim, bool normalize = true) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(u(rng), u(rng));
    if (normalize && v.norm() > 0.0) v /= v.norm();
    return v;
}

} // namespace test_helpers
