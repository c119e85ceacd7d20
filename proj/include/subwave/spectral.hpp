// spectral.hpp — collective decay modes of the coupling matrix
//
// The eigenvalues of J set the collective decay rates (gamma0 * Re lambda,
// amplitude factor e^{-gamma0*lambda*t/2}) and collective frequency shifts
// (gamma0 * Im lambda).  Because J commutes with the mirror permutation P,
// every mode is symmetric or anti-symmetric under qubit-order reversal; a
// degenerate cluster is re-combined by projecting onto the +-1 eigenspaces
// of P so the labels stay well defined.

#pragma once

#include <vector>

#include "subwave/coupling.hpp"
#include "subwave/errors.hpp"

namespace subwave {

enum class Symmetry { Symmetric, AntiSymmetric, Unclassified };

const char* to_string(Symmetry s);

struct DecayMode {
    Complex eigenvalue;          // lambda, dimensionless
    double decay_rate = 0.0;     // gamma0 * Re lambda
    double frequency_shift = 0.0;  // gamma0 * Im lambda
    Eigen::VectorXcd eigenvector;  // unit norm, first non-negligible entry real positive
    Symmetry symmetry = Symmetry::Unclassified;
};

struct DecomposeOptions {
    double classification_tol = 1e-6;  // on ||P v -+ v||_2, must lie in (0, 0.1)
};

struct SpectralDecomposition {
    ChainConfig config;
    std::vector<DecayMode> modes;  // sorted by descending Re lambda
    double eigenvector_condition = 0.0;

    // Mode eigenvectors as columns, in mode order.
    Eigen::MatrixXcd eigenvector_matrix() const;
};

// Eigen-decomposes J into decay modes.  Modes are normalized, phase-fixed,
// symmetry-labelled, and sorted by descending Re lambda (ties: descending
// Im lambda, then lexicographic eigenvector order).
//
// Throws NotDiagonalizableError when the eigenvector condition number
// exceeds 1e14 and DegenerateUnresolvedError when a degenerate cluster
// cannot be split into mirror eigenspaces.
SpectralDecomposition decompose(const CouplingMatrix& j, const ChainConfig& config,
                                const DecomposeOptions& opts = {});

// Symmetric if ||P v - v|| < tol, AntiSymmetric if ||P v + v|| < tol.
Symmetry classify_symmetry(const Eigen::VectorXcd& v, const MirrorMatrix& p, double tol);

// (ceil(n/2), floor(n/2)): mirror eigenspace dimensions.
struct SubspaceDims {
    int symmetric = 0;
    int antisymmetric = 0;
};
SubspaceDims subspace_dimensions(int n);

// First-order superradiant eigenvalue and eigenvector near theta = k*pi,
// expanded about the rank-one matrix at the nearest multiple.  The reference
// vector is all-ones for even k and alternating-sign for odd k; either way
// lambda ~ n + i*delta*(n^2-1)/3 with delta = theta - k*pi.
//
// Throws OutOfPerturbativeRangeError when |delta| >= 0.3.
struct PerturbativeMode {
    Complex eigenvalue;
    Eigen::VectorXcd eigenvector;
};
PerturbativeMode perturbative_superradiant(const ChainConfig& config);

// Identifies the superradiant mode, names the opposite-symmetry subspace as
// protected, and reports the largest decay rate found inside it.
struct ProtectionReport {
    Symmetry superradiant_symmetry = Symmetry::Unclassified;
    Symmetry protected_subspace = Symmetry::Unclassified;
    double max_protected_decay_rate = 0.0;
};
ProtectionReport symmetry_protection_report(const ChainConfig& config, const DecomposeOptions& opts = {});

}  // namespace subwave
