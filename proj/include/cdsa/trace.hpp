#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdsa/problem.hpp"

namespace cdsa {

struct SwarmState;

// Error functionals of one recorded state, all relative to (x*, theta*):
//   u1 = |xbar - x*|^2                  (optimization error of the average)
//   v1 = |X - xbar 1^T|_F^2             (consensus error)
//   mse_x = (1/n) sum_i |x_i - x*|^2
// and the same three for theta.
struct ErrorPoint {
    double u1, v1, u2, v2, mse_x, mse_theta;
};

ErrorPoint errors_at(const SwarmState& state, const Optimum& opt);

struct TraceMeta {
    int n = 0;
    std::string topology;
    double rho_w = 0.0;
    std::uint64_t seed = 0;
    long paths = 1;
    std::string policy;
    long k_max = 0;
    // Sup over iterations and agents of the distances to the optimum.
    double max_x_dev = 0.0;
    double max_theta_dev = 0.0;
};

// Time series of the error functionals over one run (or the pointwise mean
// over an ensemble of runs, see average_traces).
struct RunTrace {
    std::vector<long> recorded_k;
    std::vector<double> u1, v1, u2, v2, mse_x, mse_theta;
    TraceMeta meta;

    void append(long k, const ErrorPoint& e);
    std::size_t size() const { return recorded_k.size(); }
};

enum class Metric { u1, v1, u2, v2, mse_x, mse_theta };

Metric metric_from_string(std::string_view name);
std::string to_string(Metric m);
std::span<const double> metric_values(const RunTrace& trace, Metric m);

// Pointwise arithmetic mean of every metric; requires identical recording
// schedules. The result's path count is the sum, its seed the first trace's,
// and its max deviations the sup across inputs.
RunTrace average_traces(const std::vector<RunTrace>& traces);

}  // namespace cdsa
