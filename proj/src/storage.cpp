#include "subwave/storage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subwave {

namespace {

constexpr double kProtectionWindow = 0.3 * M_PI;  // distance from k*pi, radians

std::size_t min_decay_index(const SpectralDecomposition& decomp, Symmetry restrict_to) {
    std::size_t best = decomp.modes.size();
    for (std::size_t i = 0; i < decomp.modes.size(); ++i) {
        const DecayMode& m = decomp.modes[i];
        if (restrict_to != Symmetry::Unclassified && m.symmetry != restrict_to) continue;
        if (best == decomp.modes.size()) {
            best = i;
            continue;
        }
        const DecayMode& cur = decomp.modes[best];
        if (m.decay_rate != cur.decay_rate) {
            if (m.decay_rate < cur.decay_rate) best = i;
        } else if (std::abs(m.frequency_shift) < std::abs(cur.frequency_shift)) {
            best = i;
        }
    }
    if (best == decomp.modes.size()) {
        throw NoProtectedSubspaceError("no mode with the requested symmetry exists");
    }
    return best;
}

Symmetry protected_class(const SpectralDecomposition& decomp) {
    const DecayMode& superradiant = decomp.modes.front();
    if (superradiant.symmetry == Symmetry::Unclassified) {
        throw DegenerateUnresolvedError("superradiant mode symmetry unresolved");
    }
    return superradiant.symmetry == Symmetry::Symmetric ? Symmetry::AntiSymmetric
                                                        : Symmetry::Symmetric;
}

DecayMode select_protected_best(const SpectralDecomposition& decomp) {
    const ChainConfig& config = decomp.config;
    if (config.n < 2) {
        throw NoProtectedSubspaceError("symmetry_protected_best: single qubit has no protected subspace");
    }
    if (distance_to_pi_multiple(config.theta) > kProtectionWindow) {
        throw NoProtectedSubspaceError(
            "symmetry_protected_best: theta too far from a multiple of pi");
    }
    return decomp.modes[min_decay_index(decomp, protected_class(decomp))];
}

ChainConfig snapped_config(const ChainConfig& config) {
    ChainConfig snapped = config;
    snapped.theta = std::round(config.theta / M_PI) * M_PI;
    return snapped;
}

// Ideal preparation for a perturbed mode: the snapped-decomposition mode
// with the largest overlap.
QubitState ideal_preparation(const SpectralDecomposition& snapped, const DecayMode& mode) {
    std::size_t best = 0;
    double best_overlap = -1.0;
    for (std::size_t i = 0; i < snapped.modes.size(); ++i) {
        const double overlap = std::abs(snapped.modes[i].eigenvector.dot(mode.eigenvector));
        if (overlap > best_overlap) {
            best_overlap = overlap;
            best = i;
        }
    }
    return snapped.modes[best].eigenvector;
}

}  // namespace

DecayMode optimal_storage_state(const ChainConfig& config) {
    const SpectralDecomposition decomp = decompose(build_coupling_matrix(config), config);
    return decomp.modes[min_decay_index(decomp, Symmetry::Unclassified)];
}

DecayMode symmetry_protected_best(const ChainConfig& config) {
    return select_protected_best(decompose(build_coupling_matrix(config), config));
}

double superradiant_overlap(const QubitState& state, const SpectralDecomposition& decomp) {
    const ModeCoefficients coeffs = expand_in_modes(state, decomp);
    std::size_t fastest = 0;
    for (std::size_t i = 1; i < decomp.modes.size(); ++i) {
        if (decomp.modes[i].decay_rate > decomp.modes[fastest].decay_rate) fastest = i;
    }
    return std::abs(coeffs.coefficients(static_cast<Eigen::Index>(fastest)));
}

StrategyReport compare_strategies(const ChainConfig& config, double threshold,
                                  double perturbation) {
    validate(config);
    ChainConfig perturbed = config;
    perturbed.theta += perturbation;

    const SpectralDecomposition decomp_p =
        decompose(build_coupling_matrix(perturbed), perturbed);
    const SpectralDecomposition decomp_0 =
        decompose(build_coupling_matrix(snapped_config(perturbed)), snapped_config(perturbed));

    StrategyReport report;
    report.config = config;
    report.superradiant_mode = decomp_p.modes.front();
    report.optimal_mode = decomp_p.modes[min_decay_index(decomp_p, Symmetry::Unclassified)];
    report.protected_best = select_protected_best(decomp_p);

    const QubitState prep_optimal = ideal_preparation(decomp_0, report.optimal_mode);
    const QubitState prep_protected = ideal_preparation(decomp_0, report.protected_best);

    report.superradiant_overlap_optimal = superradiant_overlap(prep_optimal, decomp_p);
    report.superradiant_overlap_protected = superradiant_overlap(prep_protected, decomp_p);
    report.storage_time_optimal = storage_time(prep_optimal, perturbed, threshold);
    report.storage_time_protected = storage_time(prep_protected, perturbed, threshold);
    return report;
}

QubitState named_state(NamedState which, const ChainConfig& config, int qubit) {
    validate(config);
    const int n = config.n;
    switch (which) {
        case NamedState::Dicke:
            return Eigen::VectorXcd::Constant(n, Complex(1.0 / std::sqrt(n), 0.0));
        case NamedState::Alternating: {
            QubitState state(n);
            const double amp = 1.0 / std::sqrt(n);
            for (int i = 0; i < n; ++i) {
                state(i) = Complex(i % 2 == 0 ? amp : -amp, 0.0);
            }
            return state;
        }
        case NamedState::Single: {
            if (qubit < 1 || qubit > n) {
                throw std::invalid_argument("named_state: qubit index out of range");
            }
            QubitState state = Eigen::VectorXcd::Zero(n);
            state(qubit - 1) = 1.0;
            return state;
        }
        case NamedState::SymSubradiant:
        case NamedState::AntisymSubradiant: {
            const ChainConfig snapped = snapped_config(config);
            const SpectralDecomposition decomp =
                decompose(build_coupling_matrix(snapped), snapped);
            const Symmetry wanted = which == NamedState::SymSubradiant
                                        ? Symmetry::Symmetric
                                        : Symmetry::AntiSymmetric;
            std::size_t best = decomp.modes.size();
            for (std::size_t i = 1; i < decomp.modes.size(); ++i) {  // skip superradiant
                if (decomp.modes[i].symmetry != wanted) continue;
                if (best == decomp.modes.size() ||
                    decomp.modes[i].decay_rate < decomp.modes[best].decay_rate) {
                    best = i;
                }
            }
            if (best == decomp.modes.size()) {
                throw std::invalid_argument(
                    "named_state: no subradiant mode with the requested symmetry for this n");
            }
            return decomp.modes[best].eigenvector;
        }
    }
    throw std::invalid_argument("named_state: unknown state name");
}

}  // namespace subwave
