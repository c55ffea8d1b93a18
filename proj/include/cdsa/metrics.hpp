#pragma once

#include <optional>

#include "cdsa/trace.hpp"

namespace cdsa {

struct SlopeFit {
    double slope;
    double intercept;
    double r2;
};

// Ordinary least squares of log10(metric) on log10(k) over the recorded
// points with k in [k_lo, k_hi]. Requires at least 5 points in the window and
// strictly positive metric values there.
SlopeFit loglog_slope(const RunTrace& trace, Metric metric, double k_lo, double k_hi);

// Smallest recorded k >= burn_in at which trace_a's metric falls to or below
// trace_b's. The traces must share their recording schedule.
std::optional<long> crossover(const RunTrace& trace_a, const RunTrace& trace_b, Metric metric,
                              long burn_in = 10);

// Iteration index K1 = ceil(max{2K, 16 / (1 - rho_w^2)}) from which the
// 1/k^2 consensus envelope holds. Requires rho_w in [0, 1).
long consensus_onset(long stepsize_offset, double rho_w);

// Predicted transient-iteration scale c * n / (1 - rho_w)^2. Only ratios of
// this quantity are meaningful; c is calibrated per problem family.
double transient_scale(int n, double rho_w, double c);

}  // namespace cdsa
