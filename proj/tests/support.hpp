// support.hpp — shared helpers and independent oracles for the test suites

#pragma once

#include <complex>
#include <random>

#include "subwave/coupling.hpp"
#include "subwave/spectral.hpp"

namespace testsupport {

using subwave::Complex;

inline double random_theta(std::mt19937_64& rng, double min_pi_distance = 0.0) {
    std::uniform_real_distribution<double> dist(1e-9, 2.0 * M_PI - 1e-9);
    double theta = dist(rng);
    while (min_pi_distance > 0.0 &&
           subwave::distance_to_pi_multiple(theta) < min_pi_distance) {
        theta = dist(rng);
    }
    return theta;
}

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd state(n);
    for (int i = 0; i < n; ++i) {
        state(i) = Complex(gauss(rng), gauss(rng));
    }
    return state.normalized();
}

// Mirror-symmetric (sign = +1) or anti-symmetric (sign = -1) random state.
inline Eigen::VectorXcd random_mirror_state(std::mt19937_64& rng, int n, int sign) {
    const subwave::MirrorMatrix p = subwave::build_mirror_matrix(n);
    Eigen::VectorXcd state;
    do {
        const Eigen::VectorXcd base = random_state(rng, n);
        state = base + static_cast<double>(sign) * (p * base).eval();
    } while (state.norm() < 1e-6);
    return state.normalized();
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Analytic two-qubit spectrum: lambda = 1 +- e^{i theta} with eigenvectors
// (1, 1)/sqrt(2) and (1, -1)/sqrt(2).
inline std::pair<Complex, Complex> two_qubit_eigenvalues(double theta) {
    const Complex p = std::exp(Complex(0.0, theta));
    return {1.0 + p, 1.0 - p};
}

}  // namespace testsupport
