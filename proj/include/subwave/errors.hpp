// errors.hpp — exception types shared across the subwave modules

#pragma once

#include <stdexcept>
#include <string>

namespace subwave {

// Eigenvector matrix condition number exceeds the diagonalizability limit
// (theta at, or within ~1e-8 of, a multiple of pi with a defective cluster).
// Callers should fall back to the ODE evolution path.
struct NotDiagonalizableError : std::runtime_error {
    explicit NotDiagonalizableError(const std::string& what) : std::runtime_error(what) {}
};

// A degenerate eigenvalue cluster could not be split into +1/-1 mirror
// eigenspaces within tolerance.
struct DegenerateUnresolvedError : std::runtime_error {
    explicit DegenerateUnresolvedError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenvector matrix too ill-conditioned for a trustworthy mode expansion.
struct IllConditionedError : std::runtime_error {
    explicit IllConditionedError(const std::string& what) : std::runtime_error(what) {}
};

// No symmetry-protected subspace exists (single qubit, or theta too far from
// a multiple of pi for the protection argument to designate a class).
struct NoProtectedSubspaceError : std::runtime_error {
    explicit NoProtectedSubspaceError(const std::string& what) : std::runtime_error(what) {}
};

// First-order expansion requested outside its validity window.
struct OutOfPerturbativeRangeError : std::runtime_error {
    explicit OutOfPerturbativeRangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subwave
