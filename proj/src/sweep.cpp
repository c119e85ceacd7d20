#include "subwave/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef SUBWAVE_HAVE_OPENMP
#include <omp.h>
#endif

namespace subwave {

std::vector<double> sweep_grid(const SweepRequest& request) {
    if (request.steps < 1) {
        throw std::invalid_argument("sweep: steps must be >= 1");
    }
    if (request.steps > 1 && !(request.theta_max >= request.theta_min)) {
        throw std::invalid_argument("sweep: theta_max must be >= theta_min");
    }
    std::vector<double> thetas(static_cast<std::size_t>(request.steps));
    const double span = request.theta_max - request.theta_min;
    for (int i = 0; i < request.steps; ++i) {
        double t = request.steps == 1
                       ? request.theta_min
                       : request.theta_min + span * static_cast<double>(i) /
                                                 static_cast<double>(request.steps - 1);
        if (request.grid_in_pi_units) t *= M_PI;
        thetas[static_cast<std::size_t>(i)] = t;
    }
    return thetas;
}

SweepRow evaluate_sweep_point(int n, double theta, double gamma0) {
    const ChainConfig config{n, theta, gamma0};
    const SpectralDecomposition decomp = decompose(build_coupling_matrix(config), config);

    SweepRow row;
    row.theta = theta;
    row.max_decay_rate = decomp.modes.front().decay_rate;
    row.min_decay_rate = decomp.modes.back().decay_rate;
    for (const DecayMode& mode : decomp.modes) {
        row.min_decay_rate = std::min(row.min_decay_rate, mode.decay_rate);
        row.max_decay_rate = std::max(row.max_decay_rate, mode.decay_rate);
    }
    row.det_abs = std::abs(determinant_closed_form(config));

    row.protected_max_rate = std::numeric_limits<double>::quiet_NaN();
    if (n > 1 && decomp.modes.front().symmetry != Symmetry::Unclassified) {
        const Symmetry protected_class = decomp.modes.front().symmetry == Symmetry::Symmetric
                                             ? Symmetry::AntiSymmetric
                                             : Symmetry::Symmetric;
        double rate = 0.0;
        for (const DecayMode& mode : decomp.modes) {
            if (mode.symmetry == protected_class) rate = std::max(rate, mode.decay_rate);
        }
        row.protected_max_rate = rate;
    }
    return row;
}

std::vector<SweepRow> run_sweep_serial(const SweepRequest& request) {
    const std::vector<double> thetas = sweep_grid(request);
    std::vector<SweepRow> rows(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        rows[i] = evaluate_sweep_point(request.n, thetas[i], request.gamma0);
    }
    return rows;
}

std::vector<SweepRow> run_sweep(const SweepRequest& request, int threads) {
#ifdef SUBWAVE_HAVE_OPENMP
    const std::vector<double> thetas = sweep_grid(request);
    std::vector<SweepRow> rows(thetas.size());
    const auto count = static_cast<long>(thetas.size());
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long i = 0; i < count; ++i) {
            rows[static_cast<std::size_t>(i)] =
                evaluate_sweep_point(request.n, thetas[static_cast<std::size_t>(i)], request.gamma0);
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) {
            rows[static_cast<std::size_t>(i)] =
                evaluate_sweep_point(request.n, thetas[static_cast<std::size_t>(i)], request.gamma0);
        }
    }
    return rows;
#else
    (void)threads;
    return run_sweep_serial(request);
#endif
}

}  // namespace subwave
