#pragma once

#include <utility>

#include "cdsa/problem.hpp"

namespace cdsa {

// Streaming ridge regression with a learned regularization weight.
//
// Every oracle call draws a fresh sample: features u with i.i.d. coordinates
// Uniform(-1/2, 1/2), observation v = u . x_tilde + eps with
// eps ~ Normal(0, 0.01). The per-sample loss is (u.x - v)^2 + theta |x|^2,
// so the stochastic gradient is 2 u (u.x - v) + 2 theta x. Agent i's
// learning objective is (theta - alpha_i)^2 with alpha_i = 0.01 (i + 1);
// its gradient 2 (theta - alpha_i) is deterministic unless a noise stddev
// is configured.
//
// Closed forms: theta* = 0.005 (n + 1) (the mean of the alpha_i) and
// x* = [(1/12) / (1/12 + theta*)] x_tilde, since E[u u^T] = I / 12.
class RidgeProblem final : public CoupledProblem {
public:
    struct Params {
        int n;
        double learn_noise_std = 0.0;  // optional noise on the learning oracle
    };

    explicit RidgeProblem(Params params);

    int agent_count() const override { return n_; }
    int decision_dim() const override { return kDim; }
    int parameter_dim() const override { return 1; }

    void comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                   Eigen::Ref<Eigen::VectorXd> out) const override;
    void learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                    Eigen::Ref<Eigen::VectorXd> out) const override;

    Eigen::VectorXd exact_comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& theta) const override;
    Eigen::VectorXd exact_learn_grad(int agent,
                                     const Eigen::Ref<const Eigen::VectorXd>& theta) const override;

    std::optional<AnalyticConstants> analytic_constants() const override;
    std::optional<Optimum> optimum() const override { return closed_form_optimum(n_); }

    // One (u, v) draw.
    std::pair<Eigen::VectorXd, double> sample(RngStream& rng) const;
    // Observation for fixed features: v = u . x_tilde + eps.
    double observe(const Eigen::Ref<const Eigen::VectorXd>& u, RngStream& rng) const;
    // Per-sample gradient 2 u (u.x - v) + 2 theta x.
    static Eigen::VectorXd sample_grad(const Eigen::Ref<const Eigen::VectorXd>& x, double theta,
                                       const Eigen::Ref<const Eigen::VectorXd>& u, double v);
    // Per-sample loss (u.x - v)^2 + theta |x|^2 (for finite-difference checks).
    static double sample_loss(const Eigen::Ref<const Eigen::VectorXd>& x, double theta,
                              const Eigen::Ref<const Eigen::VectorXd>& u, double v);

    double alpha(int agent) const { return 0.01 * (agent + 1); }

    static Eigen::VectorXd x_tilde();
    // Minimizer of the computational objective at a fixed regularizer value.
    static Eigen::VectorXd x_star_for_theta(double theta);
    static Optimum closed_form_optimum(int n);

    static constexpr int kDim = 5;

private:
    int n_;
    double learn_noise_std_;
};

}  // namespace cdsa
