#include "subwave/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace subwave {

void validate(const ChainConfig& config) {
    if (config.n < 1) {
        throw std::invalid_argument("ChainConfig: qubit count must be >= 1");
    }
    if (!(config.gamma0 > 0.0) || !std::isfinite(config.gamma0)) {
        throw std::invalid_argument("ChainConfig: gamma0 must be positive and finite");
    }
    if (!std::isfinite(config.theta)) {
        throw std::invalid_argument("ChainConfig: theta must be finite");
    }
}

CouplingMatrix build_coupling_matrix(const ChainConfig& config) {
    validate(config);
    const int n = config.n;
    CouplingMatrix j(n, n);
    // One exponential per distance keeps J_{jl} bitwise equal across the
    // matrix, so J P == P J holds exactly, not just to rounding.
    Eigen::VectorXcd phase(n);
    for (int d = 0; d < n; ++d) {
        phase(d) = std::exp(Complex(0.0, config.theta * d));
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            j(r, c) = phase(std::abs(r - c));
        }
    }
    return j;
}

MirrorMatrix build_mirror_matrix(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_mirror_matrix: n must be >= 1");
    }
    MirrorMatrix p = MirrorMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        p(i, n - 1 - i) = 1.0;
    }
    return p;
}

PerturbationPair build_perturbation_matrices(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_perturbation_matrices: n must be >= 1");
    }
    PerturbationPair pair;
    pair.all_ones = Eigen::MatrixXd::Ones(n, n);
    pair.distances.resize(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            pair.distances(r, c) = std::abs(r - c);
        }
    }
    return pair;
}

LuFactors lu_closed_form(const ChainConfig& config) {
    validate(config);
    const int n = config.n;
    const Complex p = std::exp(Complex(0.0, config.theta));
    const Complex one_minus_p2 = 1.0 - p * p;

    Eigen::VectorXcd pow_p(n);
    pow_p(0) = 1.0;
    for (int d = 1; d < n; ++d) {
        pow_p(d) = pow_p(d - 1) * p;
    }

    LuFactors f;
    f.lower = Eigen::MatrixXcd::Zero(n, n);
    f.upper = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j <= a; ++j) {
            f.lower(a, j) = pow_p(a - j);
        }
    }
    for (int j = 0; j < n; ++j) {
        f.upper(0, j) = pow_p(j);
    }
    for (int a = 1; a < n; ++a) {
        for (int j = a; j < n; ++j) {
            f.upper(a, j) = pow_p(j - a) * one_minus_p2;
        }
    }
    return f;
}

Complex determinant_closed_form(const ChainConfig& config) {
    validate(config);
    const Complex base = 1.0 - std::exp(Complex(0.0, 2.0 * config.theta));
    Complex det = 1.0;
    for (int k = 1; k < config.n; ++k) {
        det *= base;
    }
    return det;
}

double distance_to_pi_multiple(double theta) {
    const double k = std::round(theta / M_PI);
    return std::abs(theta - k * M_PI);
}

bool is_singular(double theta, double tol) {
    if (!(tol > 0.0) || !(tol < M_PI * 0.5)) {
        throw std::invalid_argument("is_singular: tol must lie in (0, pi/2)");
    }
    return distance_to_pi_multiple(theta) < tol;
}

}  // namespace subwave
