// coupling.hpp — qubit-chain configuration and the waveguide coupling matrix
//
// A linear chain of n identical qubits, separated by a fixed distance and
// coupled to a one-dimensional waveguide in the Markovian regime, is fully
// described by the phase theta (transition frequency times separation) and
// the single-emitter decay rate gamma0.  All collective decay physics derives
// from the complex symmetric matrix J with entries e^{i*theta*|j-l|}.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace subwave {

using Complex = std::complex<double>;

// CouplingMatrix entries are unit modulus, complex symmetric (not Hermitian),
// with a unit diagonal.  MirrorMatrix is the 0/1 anti-diagonal permutation.
using CouplingMatrix = Eigen::MatrixXcd;
using MirrorMatrix = Eigen::MatrixXd;

struct ChainConfig {
    int n = 1;            // qubit count, n >= 1
    double theta = 0.0;   // phase in radians; any finite real, never reduced mod 2*pi
    double gamma0 = 1.0;  // single-emitter decay rate, > 0
};

// Throws std::invalid_argument if the config violates its invariants.
void validate(const ChainConfig& config);

// J[j][l] = e^{i*theta*|j-l|}.
CouplingMatrix build_coupling_matrix(const ChainConfig& config);

// Anti-diagonal permutation reversing qubit order about the chain center.
// P^2 = identity and [J, P] = 0 for every theta.
MirrorMatrix build_mirror_matrix(int n);

// First-order structure of J near theta = 2k*pi: J ~ all_ones + i*delta*distances,
// where distances[j][l] = |j-l|.
struct PerturbationPair {
    Eigen::MatrixXd all_ones;
    Eigen::MatrixXd distances;
};
PerturbationPair build_perturbation_matrices(int n);

// Closed-form triangular factors with J = lower * upper and p = e^{i*theta}:
// lower[a][j] = p^{a-j} on and below the diagonal; upper row 1 is p^{j-1},
// rows a > 1 are p^{j-a} (1 - p^2) on and above the diagonal.
struct LuFactors {
    Eigen::MatrixXcd lower;
    Eigen::MatrixXcd upper;
};
LuFactors lu_closed_form(const ChainConfig& config);

// det(J) = (1 - e^{2i*theta})^{n-1}; zero exactly at theta = k*pi.
Complex determinant_closed_form(const ChainConfig& config);

// Distance from theta to the nearest integer multiple of pi.
double distance_to_pi_multiple(double theta);

// True iff theta lies within tol of some integer multiple of pi.
// Requires 0 < tol < pi/2 so the nearest multiple is unambiguous.
bool is_singular(double theta, double tol);

}  // namespace subwave
