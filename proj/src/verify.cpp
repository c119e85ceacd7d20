#include "subwave/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "subwave/dynamics.hpp"
#include "subwave/spectral.hpp"
#include "subwave/storage.hpp"

namespace subwave {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double random_theta(std::mt19937_64& rng, double min_pi_distance) {
    std::uniform_real_distribution<double> dist(1e-9, 2.0 * M_PI - 1e-9);
    double theta = dist(rng);
    while (min_pi_distance > 0.0 && distance_to_pi_multiple(theta) < min_pi_distance) {
        theta = dist(rng);
    }
    return theta;
}

Eigen::VectorXcd random_state(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd state(n);
    for (int i = 0; i < n; ++i) {
        state(i) = Complex(gauss(rng), gauss(rng));
    }
    return state.normalized();
}

double max_abs(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

std::string format_worst(double value) {
    std::ostringstream oss;
    oss.precision(3);
    oss << std::scientific << value;
    return oss.str();
}

// Least-squares slope of ln(err) against ln(delta).
double loglog_slope(const std::vector<double>& deltas, const std::vector<double>& errs) {
    const auto count = static_cast<double>(deltas.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double x = std::log(deltas[i]);
        const double y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace

Complex numeric_determinant(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd a = m;
    const Eigen::Index n = a.rows();
    Complex det = 1.0;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        double best = std::abs(a(col, col));
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            det = -det;
        }
        det *= a(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) / a(col, col);
            a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
        }
    }
    return det;
}

CheckResult check_determinant_identity(int n_max, int theta_samples, std::uint64_t seed) {
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        for (int s = 0; s < theta_samples; ++s) {
            const ChainConfig config{n, random_theta(rng, 0.01), 1.0};
            const Complex closed = determinant_closed_form(config);
            const Complex numeric = numeric_determinant(build_coupling_matrix(config));
            worst = std::max(worst, std::abs(numeric - closed) / std::abs(closed));
        }
    }
    CheckResult result{"determinant_identity", worst < 1e-8, worst, 1e-8,
                       elapsed_seconds(start), ""};
    result.passed = result.passed && result.seconds < 5.0;
    result.detail = "worst relative error " + format_worst(worst);
    return result;
}

CheckResult check_lu_reconstruction(int n_max, int theta_samples, std::uint64_t seed) {
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        for (int s = 0; s < theta_samples; ++s) {
            const ChainConfig config{n, random_theta(rng, 0.01), 1.0};
            const LuFactors f = lu_closed_form(config);
            worst = std::max(
                worst, max_abs(f.lower * f.upper - build_coupling_matrix(config)));
        }
    }
    CheckResult result{"lu_reconstruction", worst < 1e-10, worst, 1e-10,
                       elapsed_seconds(start), ""};
    result.passed = result.passed && result.seconds < 5.0;
    result.detail = "worst max-norm residual " + format_worst(worst);
    return result;
}

CheckResult check_commutation(int n_max, int theta_samples, std::uint64_t seed) {
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const MirrorMatrix p = build_mirror_matrix(n);
        for (int s = 0; s < theta_samples; ++s) {
            const ChainConfig config{n, random_theta(rng, 0.0), 1.0};
            const CouplingMatrix j = build_coupling_matrix(config);
            worst = std::max(worst, max_abs(j * p - p * j));
        }
    }
    CheckResult result{"mirror_commutation", worst < 1e-12, worst, 1e-12,
                       elapsed_seconds(start),
                       "worst max-norm commutator " + format_worst(worst)};
    return result;
}

CheckResult check_subspace_dimensions(int n_max, int theta_samples, std::uint64_t seed) {
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    int mismatches = 0;
    for (int n = 2; n <= n_max; ++n) {
        const SubspaceDims expected = subspace_dimensions(n);
        for (int s = 0; s < theta_samples; ++s) {
            const ChainConfig config{n, random_theta(rng, 0.05), 1.0};
            const SpectralDecomposition decomp =
                decompose(build_coupling_matrix(config), config);
            int symmetric = 0, antisymmetric = 0;
            for (const DecayMode& mode : decomp.modes) {
                if (mode.symmetry == Symmetry::Symmetric) ++symmetric;
                if (mode.symmetry == Symmetry::AntiSymmetric) ++antisymmetric;
            }
            if (symmetric != expected.symmetric || antisymmetric != expected.antisymmetric) {
                ++mismatches;
            }
        }
    }
    CheckResult result{"subspace_dimensions", mismatches == 0,
                       static_cast<double>(mismatches), 0.5, elapsed_seconds(start),
                       std::to_string(mismatches) + " mismatched mode counts"};
    return result;
}

CheckResult check_symmetry_preservation(int n_max, int states_per_class, std::uint64_t seed) {
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    const Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(100, 0.0, 5.0);
    double worst = 0.0;
    for (int n = 2; n <= std::min(n_max, 8); ++n) {
        const MirrorMatrix p = build_mirror_matrix(n);
        for (int s = 0; s < states_per_class; ++s) {
            const ChainConfig config{n, random_theta(rng, 0.0), 1.0};
            const CouplingMatrix j = build_coupling_matrix(config);
            const SpectralDecomposition decomp = decompose(j, config);
            for (int sign = -1; sign <= 1; sign += 2) {
                Eigen::VectorXcd base = random_state(rng, n);
                Eigen::VectorXcd state =
                    base + static_cast<double>(sign) * (p * base).eval();
                while (state.norm() < 1e-6) {
                    base = random_state(rng, n);
                    state = base + static_cast<double>(sign) * (p * base).eval();
                }
                state.normalize();
                const Eigen::MatrixXcd eigen_amps =
                    evolve_eigen_amplitudes(state, decomp, times);
                const Eigen::MatrixXcd ode_amps =
                    evolve_ode_amplitudes(state, j, config, times);
                for (Eigen::Index row = 0; row < times.size(); ++row) {
                    const Eigen::VectorXcd ae = eigen_amps.row(row).transpose();
                    const Eigen::VectorXcd ao = ode_amps.row(row).transpose();
                    worst = std::max(
                        worst, (p * ae - static_cast<double>(sign) * ae).norm());
                    worst = std::max(
                        worst, (p * ao - static_cast<double>(sign) * ao).norm());
                }
            }
        }
    }
    CheckResult result{"symmetry_preservation", worst < 1e-8, worst, 1e-8,
                       elapsed_seconds(start),
                       "worst mirror deviation " + format_worst(worst)};
    return result;
}

CheckResult check_decay_rate_expansion() {
    const auto start = Clock::now();
    double worst = 0.0;  // residual normalized by its own tolerance
    for (const double delta : {1e-2, 1e-3}) {
        const ChainConfig config{3, 2.0 * M_PI + delta, 1.0};
        const SpectralDecomposition decomp =
            decompose(build_coupling_matrix(config), config);

        const DecayMode& sup = decomp.modes.front();
        const DecayMode* sub_sym = nullptr;
        const DecayMode* sub_anti = nullptr;
        for (std::size_t i = 1; i < decomp.modes.size(); ++i) {
            if (decomp.modes[i].symmetry == Symmetry::AntiSymmetric) {
                sub_anti = &decomp.modes[i];
            } else {
                sub_sym = &decomp.modes[i];
            }
        }

        const Complex expected_sym(2.0 / 27.0 * delta * delta, -2.0 / 3.0 * delta);
        const Complex expected_anti(2.0 * delta * delta, -2.0 * delta);
        const double tol_sub = 5.0 * delta * delta * delta;
        const double tol_sup = 5.0 * delta * delta;
        worst = std::max(worst, std::abs(sub_sym->eigenvalue - expected_sym) / tol_sub);
        worst = std::max(worst, std::abs(sub_anti->eigenvalue - expected_anti) / tol_sub);
        worst = std::max(worst, std::abs(sup.eigenvalue.real() - 3.0) / tol_sup);
    }
    CheckResult result{"decay_rate_expansion", worst < 1.0, worst, 1.0,
                       elapsed_seconds(start),
                       "worst residual at " + format_worst(worst) + " of tolerance"};
    return result;
}

CheckResult check_superradiant_overlap() {
    const auto start = Clock::now();
    const double delta = 0.01;
    const ChainConfig config{3, 2.0 * M_PI + delta, 1.0};
    const SpectralDecomposition decomp = decompose(build_coupling_matrix(config), config);

    Eigen::VectorXcd sym_state(3);
    sym_state << 1.0, -2.0, 1.0;
    sym_state /= std::sqrt(6.0);
    Eigen::VectorXcd anti_state(3);
    anti_state << 1.0, 0.0, -1.0;
    anti_state /= std::sqrt(2.0);

    const double expected = 2.0 * delta / (9.0 * std::sqrt(2.0));
    const double sym_overlap = superradiant_overlap(sym_state, decomp);
    const double anti_overlap = superradiant_overlap(anti_state, decomp);

    const double rel = std::abs(sym_overlap - expected) / expected;
    const double worst = std::max(rel / 0.10, anti_overlap / 1e-10);
    CheckResult result{"superradiant_overlap", worst < 1.0, worst, 1.0,
                       elapsed_seconds(start), ""};
    result.detail = "symmetric-state overlap " + format_worst(sym_overlap) +
                    ", anti-symmetric " + format_worst(anti_overlap);
    return result;
}

CheckResult check_rate_ratio() {
    const auto start = Clock::now();

    const double delta = 0.02;
    const ChainConfig config{3, 2.0 * M_PI + delta, 1.0};
    const SpectralDecomposition decomp = decompose(build_coupling_matrix(config), config);
    double sym_rate = 0.0, anti_rate = 0.0;
    for (std::size_t i = 1; i < decomp.modes.size(); ++i) {
        if (decomp.modes[i].symmetry == Symmetry::AntiSymmetric) {
            anti_rate = decomp.modes[i].decay_rate;
        } else {
            sym_rate = decomp.modes[i].decay_rate;
        }
    }
    const double rate_ratio = anti_rate / sym_rate;

    const ChainConfig stored{3, 2.1 * M_PI, 1.0};
    const double t_sym =
        storage_time(named_state(NamedState::SymSubradiant, stored), stored, 1.0 / M_E);
    const double t_anti =
        storage_time(named_state(NamedState::AntisymSubradiant, stored), stored, 1.0 / M_E);
    const double time_ratio = t_sym / t_anti;

    const bool passed = rate_ratio >= 27.0 * 0.85 && rate_ratio <= 27.0 * 1.15 &&
                        time_ratio >= 20.0 && time_ratio <= 34.0;
    CheckResult result{"subradiant_rate_ratio", passed, rate_ratio, 27.0 * 1.15,
                       elapsed_seconds(start), ""};
    std::ostringstream oss;
    oss.precision(4);
    oss << "rate ratio " << rate_ratio << ", storage-time ratio " << time_ratio;
    result.detail = oss.str();
    return result;
}

CheckResult check_preparation_ordering() {
    const auto start = Clock::now();
    const ChainConfig config{3, 2.1 * M_PI, 1.0};
    const CouplingMatrix j = build_coupling_matrix(config);
    const SpectralDecomposition decomp = decompose(j, config);
    const Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(2, 0.0, 5.0);

    const auto total_at_end = [&](const QubitState& state) {
        const EvolutionTrace trace = evolve_eigen(state, decomp, times);
        return trace.total_probability(trace.total_probability.size() - 1);
    };
    const double p_sym = total_at_end(named_state(NamedState::SymSubradiant, config));
    const double p_anti = total_at_end(named_state(NamedState::AntisymSubradiant, config));
    const double p_single = total_at_end(named_state(NamedState::Single, config, 1));
    const double p_dicke = total_at_end(named_state(NamedState::Dicke, config));

    const bool ordered = p_sym > p_anti && p_anti > p_single && p_single > p_dicke;
    const bool retained = p_sym > 0.9;
    CheckResult result{"preparation_ordering", ordered && retained, p_sym, 0.9,
                       elapsed_seconds(start), ""};
    result.passed = result.passed && result.seconds < 1.0;
    std::ostringstream oss;
    oss.precision(4);
    oss << "p(t=5): sym-sub " << p_sym << " > antisym-sub " << p_anti << " > single "
        << p_single << " > dicke " << p_dicke;
    result.detail = oss.str();
    return result;
}

CheckResult check_oracle_equivalence(int n_max, int cases, std::uint64_t seed) {
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    const Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(101, 0.0, 10.0);
    double worst = 0.0;
    const int max_n = std::min(n_max, 6);
    for (int c = 0; c < cases; ++c) {
        const int n = 1 + c % max_n;
        const ChainConfig config{n, random_theta(rng, 0.05), 1.0};
        const CouplingMatrix j = build_coupling_matrix(config);
        const SpectralDecomposition decomp = decompose(j, config);
        const Eigen::VectorXcd state = random_state(rng, n);
        const Eigen::MatrixXcd eigen_amps = evolve_eigen_amplitudes(state, decomp, times);
        const Eigen::MatrixXcd ode_amps = evolve_ode_amplitudes(state, j, config, times);
        for (Eigen::Index row = 0; row < times.size(); ++row) {
            worst = std::max(worst, (eigen_amps.row(row) - ode_amps.row(row)).norm());
        }
    }
    CheckResult result{"oracle_equivalence", worst < 1e-6, worst, 1e-6,
                       elapsed_seconds(start),
                       "worst amplitude deviation " + format_worst(worst)};
    return result;
}

CheckResult check_perturbative_convergence(int n_max) {
    const auto start = Clock::now();
    const std::vector<double> deltas{0.04, 0.02, 0.01};
    double worst = 0.0;
    for (int n = 2; n <= std::min(n_max, 6); ++n) {
        for (const double base : {2.0 * M_PI, 3.0 * M_PI}) {
            std::vector<double> errs;
            for (const double delta : deltas) {
                const ChainConfig config{n, base + delta, 1.0};
                const SpectralDecomposition decomp =
                    decompose(build_coupling_matrix(config), config);
                const PerturbativeMode approx = perturbative_superradiant(config);
                errs.push_back(
                    std::abs(decomp.modes.front().eigenvalue - approx.eigenvalue));
            }
            worst = std::max(worst, std::abs(loglog_slope(deltas, errs) - 2.0));
        }
    }
    CheckResult result{"perturbative_convergence", worst <= 0.1, worst, 0.1,
                       elapsed_seconds(start),
                       "worst |slope - 2| = " + format_worst(worst)};
    return result;
}

CheckResult check_bound_state_persistence() {
    const auto start = Clock::now();
    const ChainConfig config{3, M_PI, 1.0};
    const CouplingMatrix j = build_coupling_matrix(config);

    // Numerical null-space state: smallest-singular-value right vector.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j, Eigen::ComputeFullV);
    const QubitState state = svd.matrixV().col(2);

    const Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(81, 0.0, 20.0);
    const EvolutionTrace trace = evolve_ode(state, j, config, times);
    const double min_total = trace.total_probability.minCoeff();
    const double worst = 1.0 - min_total;
    CheckResult result{"bound_state_persistence", worst < 1e-6, worst, 1e-6,
                       elapsed_seconds(start),
                       "worst probability loss " + format_worst(worst)};
    return result;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    const int wide_n = opts.n_max + 2;
    const int det_samples = std::max(1, 2 * opts.trials);
    const int comm_samples = std::max(1, opts.trials / 2);
    const int dim_samples = std::max(1, opts.trials / 5);
    const int states_per_class = std::max(1, opts.trials / 20);
    const int oracle_cases = std::max(1, opts.trials / 5);

    std::vector<CheckResult> results;
    results.push_back(check_determinant_identity(wide_n, det_samples, opts.seed + 1));
    results.push_back(check_lu_reconstruction(wide_n, det_samples, opts.seed + 2));
    results.push_back(check_commutation(wide_n, comm_samples, opts.seed + 3));
    results.push_back(check_subspace_dimensions(opts.n_max, dim_samples, opts.seed + 4));
    results.push_back(
        check_symmetry_preservation(opts.n_max, states_per_class, opts.seed + 5));
    results.push_back(check_decay_rate_expansion());
    results.push_back(check_superradiant_overlap());
    results.push_back(check_rate_ratio());
    results.push_back(check_preparation_ordering());
    results.push_back(check_oracle_equivalence(opts.n_max, oracle_cases, opts.seed + 6));
    results.push_back(check_perturbative_convergence(opts.n_max));
    results.push_back(check_bound_state_persistence());
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

}  // namespace subwave
