#pragma once

#include <cstdint>
#include <vector>

#include "cdsa/problem.hpp"

namespace cdsa {

// Per-agent classification dataset: one row per sample, first feature pinned
// to 1, labels in {-1, +1}.
struct LogisticDataset {
    Eigen::MatrixXd x;       // m x 3
    Eigen::VectorXi labels;  // m
};

// Balanced two-class data: m/2 samples with label +1 whose free coordinates
// are Normal((1, 0), I), m/2 with label -1 around (0, 1). Deterministic in
// (agent, seed); m must be even.
LogisticDataset logistic_generate_data(int agent, int m, std::uint64_t seed);

// Binary classification via logistic regression with a learned ridge weight.
//
// Agent i holds dataset D_i and the objective
//   f_i(eta, theta) = sum_j ln(1 + exp(-eta.x_ij l_ij)) + theta/(2n) |eta|^2.
// Its oracle picks one sample uniformly and returns
//   m_i * (-l x sigma(-l eta.x)) + (theta/n) eta,
// which is unbiased for grad f_i. The learning objective matches the ridge
// problem: (theta - alpha_i)^2 with alpha_i = 0.01 (i + 1).
class LogisticProblem final : public CoupledProblem {
public:
    struct Params {
        int n;
        int samples_per_agent = 200;  // per agent, half per class
        std::uint64_t data_seed = 2024;
    };

    // Generates all datasets; the decision-space optimum is left unset.
    explicit LogisticProblem(Params params);
    // One agent per supplied dataset.
    explicit LogisticProblem(std::vector<LogisticDataset> data);
    // Same as Params construction, then solves for the reference optimum
    // eta* at theta*.
    static LogisticProblem with_reference_optimum(Params params);

    int agent_count() const override { return n_; }
    int decision_dim() const override { return 3; }
    int parameter_dim() const override { return 1; }

    void comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& eta,
                   const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                   Eigen::Ref<Eigen::VectorXd> out) const override;
    void learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                    Eigen::Ref<Eigen::VectorXd> out) const override;

    Eigen::VectorXd exact_comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& eta,
                                    const Eigen::Ref<const Eigen::VectorXd>& theta) const override;
    Eigen::VectorXd exact_learn_grad(int agent,
                                     const Eigen::Ref<const Eigen::VectorXd>& theta) const override;

    std::optional<Optimum> optimum() const override { return optimum_; }

    const LogisticDataset& dataset(int agent) const { return data_[agent]; }
    double theta_star() const { return 0.005 * (n_ + 1); }
    double alpha(int agent) const { return 0.01 * (agent + 1); }

    // Per-sample loss at one dataset row (for finite-difference checks).
    double sample_loss(int agent, int j, const Eigen::Ref<const Eigen::VectorXd>& eta,
                       double theta) const;
    // Stochastic gradient for a chosen row (the oracle with the draw pinned).
    Eigen::VectorXd sample_grad(int agent, int j, const Eigen::Ref<const Eigen::VectorXd>& eta,
                                double theta) const;

private:
    int n_;
    std::vector<LogisticDataset> data_;
    std::optional<Optimum> optimum_;
};

// Minimizer of the pooled objective sum_i f_i(eta, theta_star), found by
// deterministic full-gradient descent down to gradient norm 1e-10. Throws if
// 10^6 iterations do not reach the tolerance. Requires theta_star > 0.
Eigen::VectorXd logistic_reference_optimum(const LogisticProblem& problem, double theta_star);

}  // namespace cdsa
