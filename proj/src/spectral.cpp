#include "subwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subwave {

namespace {

constexpr double kClusterRelTol = 1e-8;     // eigenvalue clustering threshold
constexpr double kProjectionDropTol = 1e-6;  // Gram-Schmidt rank cutoff
constexpr double kConditionLimit = 1e14;
constexpr double kPhaseRefTol = 1e-8;       // first entry considered non-negligible

// Rotate the global phase so the first non-negligible entry is real positive.
void fix_phase(Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > kPhaseRefTol) {
            v *= std::conj(v(i)) / mag;
            return;
        }
    }
}

bool eigenvector_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return false;
}

struct ProvisionalMode {
    Complex lambda;
    Eigen::VectorXcd v;
};

// Orthonormalize candidates, dropping directions that project to (near) zero.
std::vector<Eigen::VectorXcd> orthonormal_span(const std::vector<Eigen::VectorXcd>& candidates) {
    std::vector<Eigen::VectorXcd> basis;
    for (const auto& candidate : candidates) {
        Eigen::VectorXcd w = candidate;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                w -= b.dot(w) * b;
            }
        }
        if (w.norm() > kProjectionDropTol) {
            basis.push_back(w.normalized());
        }
    }
    return basis;
}

}  // namespace

const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::Symmetric: return "symmetric";
        case Symmetry::AntiSymmetric: return "antisymmetric";
        case Symmetry::Unclassified: return "unclassified";
    }
    return "unclassified";
}

Eigen::MatrixXcd SpectralDecomposition::eigenvector_matrix() const {
    const auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXcd v(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        v.col(k) = modes[static_cast<std::size_t>(k)].eigenvector;
    }
    return v;
}

Symmetry classify_symmetry(const Eigen::VectorXcd& v, const MirrorMatrix& p, double tol) {
    const Eigen::VectorXcd pv = p * v;
    if ((pv - v).norm() < tol) return Symmetry::Symmetric;
    if ((pv + v).norm() < tol) return Symmetry::AntiSymmetric;
    return Symmetry::Unclassified;
}

SubspaceDims subspace_dimensions(int n) {
    if (n < 1) {
        throw std::invalid_argument("subspace_dimensions: n must be >= 1");
    }
    return SubspaceDims{(n + 1) / 2, n / 2};
}

SpectralDecomposition decompose(const CouplingMatrix& j, const ChainConfig& config,
                                const DecomposeOptions& opts) {
    validate(config);
    if (!(opts.classification_tol > 0.0) || !(opts.classification_tol < 0.1)) {
        throw std::invalid_argument("decompose: classification tolerance must lie in (0, 0.1)");
    }
    if (j.rows() != config.n || j.cols() != config.n) {
        throw std::invalid_argument("decompose: matrix size does not match config");
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(j);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("decompose: eigensolver failed to converge");
    }

    const int n = config.n;
    std::vector<ProvisionalMode> raw(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        raw[static_cast<std::size_t>(k)].lambda = solver.eigenvalues()(k);
        raw[static_cast<std::size_t>(k)].v = solver.eigenvectors().col(k).normalized();
    }
    std::sort(raw.begin(), raw.end(), [](const ProvisionalMode& a, const ProvisionalMode& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
        return a.lambda.imag() > b.lambda.imag();
    });

    const MirrorMatrix p = build_mirror_matrix(n);
    std::vector<ProvisionalMode> recombined;
    recombined.reserve(raw.size());

    std::size_t start = 0;
    while (start < raw.size()) {
        std::size_t end = start + 1;
        while (end < raw.size() &&
               std::abs(raw[end].lambda - raw[end - 1].lambda) <
                   kClusterRelTol * std::max(1.0, std::abs(raw[end - 1].lambda))) {
            ++end;
        }

        if (end - start == 1) {
            recombined.push_back(raw[start]);
        } else {
            // Degenerate cluster: the eigenspace is P-invariant, so it splits
            // into mirror eigenspaces.  Re-combine via projection.
            Complex mean = 0.0;
            std::vector<Eigen::VectorXcd> sym_parts, antisym_parts;
            for (std::size_t i = start; i < end; ++i) {
                mean += raw[i].lambda;
                const Eigen::VectorXcd pv = p * raw[i].v;
                sym_parts.push_back(0.5 * (raw[i].v + pv));
                antisym_parts.push_back(0.5 * (raw[i].v - pv));
            }
            mean /= static_cast<double>(end - start);

            const auto sym_basis = orthonormal_span(sym_parts);
            const auto antisym_basis = orthonormal_span(antisym_parts);
            if (sym_basis.size() + antisym_basis.size() != end - start) {
                throw DegenerateUnresolvedError(
                    "decompose: degenerate cluster does not split into mirror eigenspaces");
            }
            for (const auto& v : sym_basis) recombined.push_back({mean, v});
            for (const auto& v : antisym_basis) recombined.push_back({mean, v});
        }
        start = end;
    }

    SpectralDecomposition decomp;
    decomp.config = config;
    decomp.modes.reserve(recombined.size());
    for (auto& mode : recombined) {
        DecayMode m;
        m.eigenvalue = mode.lambda;
        m.decay_rate = config.gamma0 * mode.lambda.real();
        m.frequency_shift = config.gamma0 * mode.lambda.imag();
        m.eigenvector = mode.v.normalized();
        fix_phase(m.eigenvector);
        m.symmetry = classify_symmetry(m.eigenvector, p, opts.classification_tol);
        decomp.modes.push_back(std::move(m));
    }

    std::sort(decomp.modes.begin(), decomp.modes.end(), [](const DecayMode& a, const DecayMode& b) {
        if (a.eigenvalue.real() != b.eigenvalue.real())
            return a.eigenvalue.real() > b.eigenvalue.real();
        if (a.eigenvalue.imag() != b.eigenvalue.imag())
            return a.eigenvalue.imag() > b.eigenvalue.imag();
        return eigenvector_less(a.eigenvector, b.eigenvector);
    });

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(decomp.eigenvector_matrix());
    const double sigma_min = svd.singularValues()(n - 1);
    decomp.eigenvector_condition =
        sigma_min > 0.0 ? svd.singularValues()(0) / sigma_min
                        : std::numeric_limits<double>::infinity();
    if (decomp.eigenvector_condition > kConditionLimit) {
        throw NotDiagonalizableError(
            "decompose: eigenvector matrix condition exceeds 1e14; use the ODE evolution path");
    }
    return decomp;
}

PerturbativeMode perturbative_superradiant(const ChainConfig& config) {
    validate(config);
    const int n = config.n;
    const long k = std::lround(config.theta / M_PI);
    const double delta = config.theta - static_cast<double>(k) * M_PI;
    if (std::abs(delta) >= 0.3) {
        throw OutOfPerturbativeRangeError(
            "perturbative_superradiant: |theta - k*pi| >= 0.3, expansion unreliable");
    }

    // Reference eigenvector of the rank-one matrix at theta = k*pi:
    // all-ones for even k, alternating for odd k.
    const bool odd_multiple = (k % 2) != 0;
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
        w(i) = odd_multiple && (i % 2 == 0) ? -1.0 : 1.0;
    }

    // First-order matrix: d/d(delta) of J at the multiple, i.e. |j-l| times
    // the sign pattern (+-1)^{|j-l|} carried by the reference coupling.
    const PerturbationPair pair = build_perturbation_matrices(n);
    Eigen::MatrixXd first_order = pair.distances;
    if (odd_multiple) {
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                if (std::abs(r - c) % 2 == 1) first_order(r, c) = -first_order(r, c);
            }
        }
    }

    PerturbativeMode result;
    const double quotient = w.dot(first_order * w) / w.squaredNorm();
    result.eigenvalue = Complex(static_cast<double>(n), delta * quotient);
    result.eigenvector = (w / std::sqrt(static_cast<double>(n))).cast<Complex>();
    if (result.eigenvector(0).real() < 0.0) {
        result.eigenvector = -result.eigenvector;
    }
    return result;
}

ProtectionReport symmetry_protection_report(const ChainConfig& config, const DecomposeOptions& opts) {
    const SpectralDecomposition decomp = decompose(build_coupling_matrix(config), config, opts);

    const DecayMode& superradiant = decomp.modes.front();
    if (superradiant.symmetry == Symmetry::Unclassified) {
        throw DegenerateUnresolvedError("symmetry_protection_report: superradiant mode symmetry unresolved");
    }

    ProtectionReport report;
    report.superradiant_symmetry = superradiant.symmetry;
    report.protected_subspace = superradiant.symmetry == Symmetry::Symmetric
                                    ? Symmetry::AntiSymmetric
                                    : Symmetry::Symmetric;
    report.max_protected_decay_rate = 0.0;
    for (const DecayMode& mode : decomp.modes) {
        if (mode.symmetry == report.protected_subspace) {
            report.max_protected_decay_rate =
                std::max(report.max_protected_decay_rate, mode.decay_rate);
        }
    }
    return report;
}

}  // namespace subwave
