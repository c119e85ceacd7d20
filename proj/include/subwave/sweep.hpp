// sweep.hpp — theta-grid evaluation of spectral summaries
//
// Each grid point is an independent pure computation, so the grid is the
// natural data-parallel unit.  run_sweep distributes points across OpenMP
// threads and merges results by index; run_sweep_serial is the reference
// implementation the parallel kernel is tested and benchmarked against.
// Row content is identical either way, independent of thread count.

#pragma once

#include <vector>

#include "subwave/spectral.hpp"

namespace subwave {

struct SweepRequest {
    int n = 3;
    double theta_min = 0.0;  // multiplier of pi when grid_in_pi_units, else radians
    double theta_max = 0.0;
    int steps = 1;           // >= 1; steps == 1 evaluates theta_min only
    double gamma0 = 1.0;
    // When set, the grid is formed in multiples of pi and materialized late,
    // so grid points land exactly on multiples of pi when the range does.
    bool grid_in_pi_units = false;
};

struct SweepRow {
    double theta = 0.0;  // radians
    double min_decay_rate = 0.0;
    double max_decay_rate = 0.0;
    double det_abs = 0.0;
    // Largest decay rate in the symmetry class opposite to the superradiant
    // mode; NaN when n == 1.
    double protected_max_rate = 0.0;
};

std::vector<double> sweep_grid(const SweepRequest& request);

SweepRow evaluate_sweep_point(int n, double theta, double gamma0);

std::vector<SweepRow> run_sweep_serial(const SweepRequest& request);

// threads <= 0 uses the OpenMP default.  Falls back to the serial kernel
// when built without OpenMP.
std::vector<SweepRow> run_sweep(const SweepRequest& request, int threads = 0);

}  // namespace subwave
