#pragma once

#include <Eigen/Dense>
#include <optional>

#include "cdsa/rng.hpp"

namespace cdsa {

// Smoothness / strong-convexity / oracle-variance constants a problem may
// declare. The theta entries describe the parameter-learning objective; the
// x entries the computational objective.
struct AnalyticConstants {
    double mu_x;
    double L_x;
    double mu_theta;
    double L_theta;
    double M_x;
    double M_theta;
    double sigma_x;
    double sigma_theta;
};

struct Optimum {
    Eigen::VectorXd x_star;      // size p
    Eigen::VectorXd theta_star;  // size q
};

// A coupled problem bundles, per agent, a stochastic gradient oracle for the
// computational objective f_i(x, theta) and one for the parameter-learning
// objective h_i(theta). Implementations are immutable after construction;
// oracle calls are pure given the caller-supplied stream, so concurrent use
// with independent streams is safe.
class CoupledProblem {
public:
    virtual ~CoupledProblem() = default;

    virtual int agent_count() const = 0;
    virtual int decision_dim() const = 0;   // p
    virtual int parameter_dim() const = 0;  // q

    // Unbiased stochastic gradient of f_i at (x, theta), written to `out`.
    virtual void comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                           Eigen::Ref<Eigen::VectorXd> out) const = 0;

    // Unbiased stochastic gradient of h_i at theta, written to `out`.
    virtual void learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta,
                            RngStream& rng, Eigen::Ref<Eigen::VectorXd> out) const = 0;

    // Exact local gradients (the means the oracles estimate); used by the
    // assumption validator and by tests.
    virtual Eigen::VectorXd exact_comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                                            const Eigen::Ref<const Eigen::VectorXd>& theta) const = 0;
    virtual Eigen::VectorXd exact_learn_grad(int agent,
                                             const Eigen::Ref<const Eigen::VectorXd>& theta) const = 0;

    virtual std::optional<AnalyticConstants> analytic_constants() const { return std::nullopt; }
    virtual std::optional<Optimum> optimum() const { return std::nullopt; }

    // Allocating conveniences.
    Eigen::VectorXd comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng) const {
        Eigen::VectorXd g(decision_dim());
        comp_grad(agent, x, theta, rng, g);
        return g;
    }
    Eigen::VectorXd learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta,
                               RngStream& rng) const {
        Eigen::VectorXd g(parameter_dim());
        learn_grad(agent, theta, rng, g);
        return g;
    }
};

}  // namespace cdsa
