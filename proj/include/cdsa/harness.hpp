#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cdsa/config.hpp"
#include "cdsa/swarm.hpp"

namespace cdsa {

// Every iteration up to dense_until, then log_points log-spaced checkpoints;
// k_max is always included.
std::vector<long> recording_schedule(long k_max, const RecordSpec& record);

// Seed for one Monte Carlo path, derived so paths are independent of each
// other and of execution order.
std::uint64_t path_seed(std::uint64_t master_seed, long path_index);

std::unique_ptr<CoupledProblem> make_problem(const ProblemSpec& spec, int n);
Topology make_topology(const TopologySpec& spec);
StepsizePolicy make_policy(const PolicySpec& spec, const CoupledProblem& problem);
SwarmState initial_state(const ProblemSpec& spec, const CoupledProblem& problem);

// Runs `paths` independent CDSA paths (concurrently when threads allow) and
// averages them in path-index order, so the result is bitwise reproducible.
RunTrace monte_carlo(const ExperimentConfig& cfg);

// One averaged trace per axis point; policy, schedule and per-path seeds are
// shared, so equal-n comparisons reuse common random numbers. A failing point
// is reported in `failures` and leaves the other points untouched.
struct SweepResult {
    std::vector<RunTrace> traces;
    std::vector<std::string> failures;
};
SweepResult sweep(const ExperimentConfig& base, std::span<const TopologySpec> axis);

}  // namespace cdsa
