#include "subwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace subwave {

namespace {

constexpr double kExpandConditionLimit = 1e12;
constexpr double kStorageTimeCap = 1e6;       // in units of 1/gamma0
constexpr int kStorageSamples = 1000;
constexpr double kStorageRelTol = 1e-6;

void check_times(const Eigen::VectorXd& times) {
    if (times.size() == 0) {
        throw std::invalid_argument("evolution: at least one sample time required");
    }
    if (times(0) < 0.0) {
        throw std::invalid_argument("evolution: sample times must be >= 0");
    }
    for (Eigen::Index i = 1; i < times.size(); ++i) {
        if (times(i) < times(i - 1)) {
            throw std::invalid_argument("evolution: sample times must be ascending");
        }
    }
}

EvolutionTrace trace_from_amplitudes(const Eigen::VectorXd& times,
                                     const Eigen::MatrixXcd& amplitudes) {
    EvolutionTrace trace;
    trace.times = times;
    trace.per_qubit_probability = amplitudes.cwiseAbs2();
    trace.total_probability = trace.per_qubit_probability.rowwise().sum();
    return trace;
}

}  // namespace

ModeCoefficients expand_in_modes(const QubitState& state, const SpectralDecomposition& decomp) {
    if (state.size() != decomp.config.n) {
        throw std::invalid_argument("expand_in_modes: state length does not match config");
    }
    if (decomp.eigenvector_condition >= kExpandConditionLimit) {
        throw IllConditionedError(
            "expand_in_modes: eigenvector condition >= 1e12; use the ODE evolution path");
    }

    const Eigen::MatrixXcd v = decomp.eigenvector_matrix();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v);
    ModeCoefficients result;
    result.coefficients = lu.solve(state);
    // One step of iterative refinement keeps the reconstruction residual
    // near rounding level even for moderately conditioned mode bases.
    result.coefficients += lu.solve(state - v * result.coefficients);
    result.residual = (v * result.coefficients - state).norm();
    return result;
}

Eigen::MatrixXcd evolve_eigen_amplitudes(const QubitState& state,
                                         const SpectralDecomposition& decomp,
                                         const Eigen::VectorXd& times) {
    check_times(times);
    const ModeCoefficients coeffs = expand_in_modes(state, decomp);
    const int n = decomp.config.n;
    const double gamma0 = decomp.config.gamma0;

    Eigen::VectorXcd lambdas(n);
    for (int k = 0; k < n; ++k) {
        lambdas(k) = decomp.modes[static_cast<std::size_t>(k)].eigenvalue;
    }
    const Eigen::MatrixXcd v = decomp.eigenvector_matrix();

    Eigen::MatrixXcd amplitudes(times.size(), n);
    for (Eigen::Index row = 0; row < times.size(); ++row) {
        const Eigen::VectorXcd weights =
            (-0.5 * gamma0 * times(row) * lambdas.array()).exp() * coeffs.coefficients.array();
        amplitudes.row(row) = (v * weights).transpose();
    }
    return amplitudes;
}

Eigen::MatrixXcd evolve_ode_amplitudes(const QubitState& state, const CouplingMatrix& j,
                                       const ChainConfig& config, const Eigen::VectorXd& times,
                                       double step_override) {
    validate(config);
    check_times(times);
    if (state.size() != config.n || j.rows() != config.n || j.cols() != config.n) {
        throw std::invalid_argument("evolve_ode: dimension mismatch");
    }

    double min_gap = times(0) > 0.0 ? times(0) : std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < times.size(); ++i) {
        const double gap = times(i) - times(i - 1);
        if (gap > 0.0) min_gap = std::min(min_gap, gap);
    }
    double h = 0.01 / (config.gamma0 * config.n);
    if (std::isfinite(min_gap)) h = std::min(h, min_gap / 4.0);
    if (step_override > 0.0) h = step_override;

    const Eigen::MatrixXcd a = Complex(-0.5 * config.gamma0, 0.0) * j;
    const auto rk4_step = [&a](Eigen::VectorXcd& y, double dt) {
        const Eigen::VectorXcd k1 = a * y;
        const Eigen::VectorXcd k2 = a * (y + (0.5 * dt) * k1);
        const Eigen::VectorXcd k3 = a * (y + (0.5 * dt) * k2);
        const Eigen::VectorXcd k4 = a * (y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    Eigen::MatrixXcd amplitudes(times.size(), config.n);
    Eigen::VectorXcd y = state;
    double t = 0.0;
    for (Eigen::Index row = 0; row < times.size(); ++row) {
        const double target = times(row);
        const double span = target - t;
        if (span > 0.0) {
            const auto full_steps = static_cast<long>(std::floor(span / h));
            for (long s = 0; s < full_steps; ++s) {
                rk4_step(y, h);
            }
            const double partial = target - (t + static_cast<double>(full_steps) * h);
            if (partial > 0.0) {
                rk4_step(y, partial);
            }
            t = target;
        }
        amplitudes.row(row) = y.transpose();
    }
    return amplitudes;
}

EvolutionTrace evolve_eigen(const QubitState& state, const SpectralDecomposition& decomp,
                            const Eigen::VectorXd& times) {
    return trace_from_amplitudes(times, evolve_eigen_amplitudes(state, decomp, times));
}

EvolutionTrace evolve_ode(const QubitState& state, const CouplingMatrix& j,
                          const ChainConfig& config, const Eigen::VectorXd& times,
                          double step_override) {
    return trace_from_amplitudes(times, evolve_ode_amplitudes(state, j, config, times, step_override));
}

double storage_time(const QubitState& state, const ChainConfig& config, double threshold) {
    validate(config);
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw std::invalid_argument("storage_time: threshold must lie in (0, 1)");
    }
    const double p0 = state.squaredNorm();
    if (!(p0 > 0.0)) {
        throw std::invalid_argument("storage_time: state must be non-zero");
    }

    const CouplingMatrix j = build_coupling_matrix(config);

    // Point evaluator for the total excitation probability.  The mode
    // expansion gives cheap random access; fall back to integrating the ODE
    // from t = 0 when the decomposition is unusable.
    std::function<double(double)> probability;
    SpectralDecomposition decomp;
    Eigen::VectorXcd weights;
    Eigen::MatrixXcd v;
    Eigen::VectorXcd lambdas;
    bool use_modes = true;
    try {
        decomp = decompose(j, config);
        const ModeCoefficients coeffs = expand_in_modes(state, decomp);
        v = decomp.eigenvector_matrix();
        weights = coeffs.coefficients;
        lambdas.resize(config.n);
        for (int k = 0; k < config.n; ++k) {
            lambdas(k) = decomp.modes[static_cast<std::size_t>(k)].eigenvalue;
        }
    } catch (const NotDiagonalizableError&) {
        use_modes = false;
    } catch (const IllConditionedError&) {
        use_modes = false;
    }
    if (use_modes) {
        probability = [&](double t) {
            const Eigen::VectorXcd scaled =
                (-0.5 * config.gamma0 * t * lambdas.array()).exp() * weights.array();
            return (v * scaled).squaredNorm();
        };
    } else {
        probability = [&](double t) {
            if (t == 0.0) return p0;
            Eigen::VectorXd single(1);
            single(0) = t;
            return evolve_ode_amplitudes(state, j, config, single).row(0).squaredNorm();
        };
    }

    const double target = threshold * p0;
    const double cap = kStorageTimeCap / config.gamma0;
    double window = 10.0 / config.gamma0;
    double prev_t = 0.0;
    while (true) {
        bool found = false;
        double lo = prev_t, hi = window;
        for (int i = 1; i < kStorageSamples; ++i) {
            const double t =
                prev_t + (window - prev_t) * static_cast<double>(i) / (kStorageSamples - 1);
            if (probability(t) <= target) {
                hi = t;
                found = true;
                break;
            }
            lo = t;
        }
        if (found) {
            while (hi - lo > kStorageRelTol * hi) {
                const double mid = 0.5 * (lo + hi);
                (probability(mid) <= target ? hi : lo) = mid;
            }
            return hi;
        }
        if (window >= cap) {
            return std::numeric_limits<double>::infinity();
        }
        prev_t = window;
        window = std::min(2.0 * window, cap);
    }
}

}  // namespace subwave
