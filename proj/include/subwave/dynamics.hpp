// dynamics.hpp — time evolution of a qubit-excitation state
//
// In the single-excitation subspace the amplitudes obey the linear system
// d(alpha)/dt = -(gamma0/2) J alpha.  Two independent integration routes are
// provided: expansion in decay modes (alpha(t) = sum_k x_k xi^k
// e^{-gamma0 lambda_k t / 2}) and fixed-step RK4 on the ODE itself.  They
// cross-validate each other and the RK4 path also works at the singular
// points theta = k*pi where bound states in the continuum appear.

#pragma once

#include "subwave/spectral.hpp"

namespace subwave {

// Complex amplitudes over the single-excitation basis; sum |alpha_j|^2 <= 1.
using QubitState = Eigen::VectorXcd;

struct ModeCoefficients {
    Eigen::VectorXcd coefficients;  // x with V x = alpha0
    double residual = 0.0;          // ||V x - alpha0||_2
};

struct EvolutionTrace {
    Eigen::VectorXd times;
    Eigen::MatrixXd per_qubit_probability;  // times.size() x n, |alpha_j(t)|^2
    Eigen::VectorXd total_probability;
};

// Solves V x = alpha0 for the mode coefficients.  Throws IllConditionedError
// when decomp.eigenvector_condition >= 1e12.
ModeCoefficients expand_in_modes(const QubitState& state, const SpectralDecomposition& decomp);

// Amplitude-level evolution; rows are sample times, columns qubits.
Eigen::MatrixXcd evolve_eigen_amplitudes(const QubitState& state,
                                         const SpectralDecomposition& decomp,
                                         const Eigen::VectorXd& times);
// RK4 with fixed internal step h = min(0.01/(gamma0*n), min_gap/4), landing
// exactly on every requested sample time.  step_override > 0 replaces h.
Eigen::MatrixXcd evolve_ode_amplitudes(const QubitState& state, const CouplingMatrix& j,
                                       const ChainConfig& config, const Eigen::VectorXd& times,
                                       double step_override = 0.0);

EvolutionTrace evolve_eigen(const QubitState& state, const SpectralDecomposition& decomp,
                            const Eigen::VectorXd& times);
EvolutionTrace evolve_ode(const QubitState& state, const CouplingMatrix& j,
                          const ChainConfig& config, const Eigen::VectorXd& times,
                          double step_override = 0.0);

// Smallest t with total_probability(t)/total_probability(0) <= threshold,
// found by dense sampling over an adaptively doubled window plus bisection
// to relative 1e-6.  Returns +infinity if not reached by t = 1e6/gamma0.
double storage_time(const QubitState& state, const ChainConfig& config, double threshold);

}  // namespace subwave
