#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cdsa/mixing.hpp"
#include "cdsa/problem.hpp"
#include "cdsa/stepsize.hpp"
#include "cdsa/trace.hpp"

namespace cdsa {

// Stacked iterates at iteration k, one column per agent: x is p x n,
// theta is q x n. Dimensions are fixed for the lifetime of a run.
struct SwarmState {
    Eigen::MatrixXd x;
    Eigen::MatrixXd theta;
    long k = 0;
};

// Derives the per-(agent, iteration, oracle) random streams of one run, so
// any single draw is reconstructible in isolation and agents can be stepped
// in any order.
class RunRng {
public:
    explicit RunRng(std::uint64_t run_seed) : seed_(run_seed) {}

    RngStream comp_stream(int agent, long k) const {
        return RngStream(derive_key(
            seed_, {stream_tag::comp, static_cast<std::uint64_t>(agent), static_cast<std::uint64_t>(k)}));
    }
    RngStream learn_stream(int agent, long k) const {
        return RngStream(derive_key(
            seed_, {stream_tag::learn, static_cast<std::uint64_t>(agent), static_cast<std::uint64_t>(k)}));
    }

private:
    std::uint64_t seed_;
};

// Local SGD phase: every agent takes one stochastic gradient step at its own
// iterate, x_i - alpha g_i and theta_i - gamma phi_i. The sampled gradients
// are kept so callers can verify the average recursion.
struct SgdPhaseResult {
    Eigen::MatrixXd x_half;       // p x n
    Eigen::MatrixXd theta_half;   // q x n
    Eigen::MatrixXd comp_grads;   // p x n
    Eigen::MatrixXd learn_grads;  // q x n
};

SgdPhaseResult sgd_phase(const CoupledProblem& problem, const SwarmState& state, double alpha,
                         double gamma, const RunRng& rng);

// Consensus phase: every column becomes the W-weighted combination of its
// neighbors' half-iterates; the iteration counter advances.
SwarmState mix_phase(const WeightMatrix& w, const SgdPhaseResult& half, long next_k);

struct RunConfig {
    long k_max = 1;
    std::uint64_t seed = 0;
    std::vector<long> record_ks;  // ascending, subset of [1, k_max]
};

// Runs k_max full (SGD + mix) iterations from the given state and records the
// error functionals at the scheduled iterations. Deterministic in the seed.
// Aborts with the iteration index if any iterate turns non-finite.
RunTrace run(const CoupledProblem& problem, const WeightMatrix& w, const StepsizePolicy& policy,
             SwarmState initial, const RunConfig& cfg, const Optimum& opt);

}  // namespace cdsa
