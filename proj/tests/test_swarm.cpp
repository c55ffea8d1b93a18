#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "cdsa/harness.hpp"
#include "cdsa/ridge.hpp"
#include "cdsa/swarm.hpp"

using namespace cdsa;

namespace {

// Stub returning a fixed computational gradient and zero learning gradient.
class ConstantProblem final : public CoupledProblem {
public:
    ConstantProblem(int n, Eigen::VectorXd g) : n_(n), g_(std::move(g)) {}
    int agent_count() const override { return n_; }
    int decision_dim() const override { return static_cast<int>(g_.size()); }
    int parameter_dim() const override { return 1; }
    void comp_grad(int, const Eigen::Ref<const Eigen::VectorXd>&,
                   const Eigen::Ref<const Eigen::VectorXd>&, RngStream&,
                   Eigen::Ref<Eigen::VectorXd> out) const override {
        out = g_;
    }
    void learn_grad(int, const Eigen::Ref<const Eigen::VectorXd>&, RngStream&,
                    Eigen::Ref<Eigen::VectorXd> out) const override {
        out.setZero();
    }
    Eigen::VectorXd exact_comp_grad(int, const Eigen::Ref<const Eigen::VectorXd>&,
                                    const Eigen::Ref<const Eigen::VectorXd>&) const override {
        return g_;
    }
    Eigen::VectorXd exact_learn_grad(int, const Eigen::Ref<const Eigen::VectorXd>&) const override {
        return Eigen::VectorXd::Zero(1);
    }

private:
    int n_;
    Eigen::VectorXd g_;
};

// Ridge with the stochastic oracle replaced by its exact expectation.
class ExactRidge final : public CoupledProblem {
public:
    explicit ExactRidge(int n) : ridge_({n}) {}
    int agent_count() const override { return ridge_.agent_count(); }
    int decision_dim() const override { return ridge_.decision_dim(); }
    int parameter_dim() const override { return ridge_.parameter_dim(); }
    void comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream&,
                   Eigen::Ref<Eigen::VectorXd> out) const override {
        out = ridge_.exact_comp_grad(agent, x, theta);
    }
    void learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                    Eigen::Ref<Eigen::VectorXd> out) const override {
        ridge_.learn_grad(agent, theta, rng, out);
    }
    Eigen::VectorXd exact_comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& theta) const override {
        return ridge_.exact_comp_grad(agent, x, theta);
    }
    Eigen::VectorXd exact_learn_grad(int agent,
                                     const Eigen::Ref<const Eigen::VectorXd>& theta) const override {
        return ridge_.exact_learn_grad(agent, theta);
    }
    std::optional<Optimum> optimum() const override { return ridge_.optimum(); }

private:
    RidgeProblem ridge_;
};

class NanProblem final : public CoupledProblem {
public:
    explicit NanProblem(int n) : n_(n) {}
    int agent_count() const override { return n_; }
    int decision_dim() const override { return 2; }
    int parameter_dim() const override { return 1; }
    void comp_grad(int, const Eigen::Ref<const Eigen::VectorXd>&,
                   const Eigen::Ref<const Eigen::VectorXd>&, RngStream&,
                   Eigen::Ref<Eigen::VectorXd> out) const override {
        out.setConstant(std::nan(""));
    }
    void learn_grad(int, const Eigen::Ref<const Eigen::VectorXd>&, RngStream&,
                    Eigen::Ref<Eigen::VectorXd> out) const override {
        out.setZero();
    }
    Eigen::VectorXd exact_comp_grad(int, const Eigen::Ref<const Eigen::VectorXd>&,
                                    const Eigen::Ref<const Eigen::VectorXd>&) const override {
        return Eigen::VectorXd::Zero(2);
    }
    Eigen::VectorXd exact_learn_grad(int, const Eigen::Ref<const Eigen::VectorXd>&) const override {
        return Eigen::VectorXd::Zero(1);
    }

private:
    int n_;
};

SwarmState ridge_start(int n) {
    SwarmState s;
    s.x = Eigen::MatrixXd::Zero(5, n);
    s.theta = Eigen::MatrixXd::Ones(1, n);
    return s;
}

}  // namespace

TEST_CASE("zero step sizes leave the state unchanged") {
    RidgeProblem prob({4});
    auto state = ridge_start(4);
    auto half = sgd_phase(prob, state, 0.0, 0.0, RunRng(3));
    CHECK(half.x_half == state.x);
    CHECK(half.theta_half == state.theta);
}

TEST_CASE("constant oracle shifts every agent by the same vector") {
    Eigen::VectorXd c(3);
    c << 1, -2, 0.5;
    ConstantProblem prob(5, c);
    SwarmState state;
    state.x = Eigen::MatrixXd::Random(3, 5);
    state.theta = Eigen::MatrixXd::Zero(1, 5);
    auto half = sgd_phase(prob, state, 1.0, 1.0, RunRng(3));
    for (int i = 0; i < 5; ++i)
        CHECK((half.x_half.col(i) - (state.x.col(i) - c)).norm() == 0.0);
}

TEST_CASE("sgd update is unbiased at the optimum") {
    RidgeProblem prob({1});
    auto opt = *prob.optimum();
    SwarmState state;
    state.x = opt.x_star;
    state.theta = opt.theta_star;

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(5);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(5);
    const int draws = 100000;
    for (int d = 1; d <= draws; ++d) {
        state.k = d;  // fresh stream each draw
        auto half = sgd_phase(prob, state, 0.7, 0.0, RunRng(17));
        Eigen::VectorXd dev = half.x_half.col(0) - opt.x_star;
        Eigen::VectorXd delta = dev - mean;
        mean += delta / d;
        m2 += delta.cwiseProduct(dev - mean);
    }
    Eigen::VectorXd se = (m2 / (draws - 1) / draws).cwiseSqrt();
    for (int i = 0; i < 5; ++i) CHECK(std::abs(mean[i]) < 3 * se[i]);
}

TEST_CASE("mixing: fixed point, averaging, mean preservation") {
    auto w2 = metropolis_weights(build_topology(TopologyKind::path, 2));

    SgdPhaseResult half;
    half.x_half.resize(1, 2);
    half.x_half << 1, 3;
    half.theta_half = Eigen::MatrixXd::Zero(1, 2);
    auto next = mix_phase(w2, half, 1);
    CHECK(next.x(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(next.x(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(next.k == 1);

    // consensual state is a fixed point
    auto w5 = metropolis_weights(build_topology(TopologyKind::cycle, 5));
    SgdPhaseResult consensual;
    Eigen::VectorXd v(3);
    v << -1, 2, 7;
    consensual.x_half = v.replicate(1, 5);
    consensual.theta_half = Eigen::MatrixXd::Constant(1, 5, 0.4);
    auto fixed = mix_phase(w5, consensual, 2);
    CHECK((fixed.x - consensual.x_half).cwiseAbs().maxCoeff() < 1e-15);

    // mixing preserves the network average
    SgdPhaseResult random_half;
    random_half.x_half = Eigen::MatrixXd::Random(3, 5);
    random_half.theta_half = Eigen::MatrixXd::Random(1, 5);
    auto mixed = mix_phase(w5, random_half, 3);
    CHECK((mixed.x.rowwise().mean() - random_half.x_half.rowwise().mean()).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("network average follows the exact average recursion") {
    RidgeProblem prob({5});
    auto w = metropolis_weights(build_topology(TopologyKind::path, 5));
    auto policy = StepsizePolicy::explicit_schedule(20, 20);
    RunRng rng(99);
    SwarmState state = ridge_start(5);
    for (long k = 0; k < 50; ++k) {
        auto [alpha, gamma] = policy.at(k);
        auto half = sgd_phase(prob, state, alpha, gamma, rng);
        Eigen::VectorXd xbar = state.x.rowwise().mean();
        Eigen::VectorXd gbar = half.comp_grads.rowwise().mean();
        auto next = mix_phase(w, half, k + 1);
        CHECK((next.x.rowwise().mean() - (xbar - alpha * gbar)).cwiseAbs().maxCoeff() < 1e-12);
        state = std::move(next);
    }
}

TEST_CASE("mixing never increases consensus error along a live run") {
    RidgeProblem prob({6});
    auto w = metropolis_weights(build_topology(TopologyKind::path, 6));
    auto policy = StepsizePolicy::explicit_schedule(20, 20);
    RunRng rng(1234);
    SwarmState state = ridge_start(6);
    for (long k = 0; k < 200; ++k) {
        auto [alpha, gamma] = policy.at(k);
        auto half = sgd_phase(prob, state, alpha, gamma, rng);
        Eigen::VectorXd half_bar = half.x_half.rowwise().mean();
        double before = (half.x_half.colwise() - half_bar).norm();
        auto next = mix_phase(w, half, k + 1);
        Eigen::VectorXd next_bar = next.x.rowwise().mean();
        double after = (next.x.colwise() - next_bar).norm();
        CHECK(after <= w.rho_w * before + 1e-9);
        state = std::move(next);
    }
}

TEST_CASE("deterministic gradient step contracts toward the optimum") {
    const int n = 4;
    ExactRidge prob(n);
    auto opt = *prob.optimum();
    auto w = metropolis_weights(build_topology(TopologyKind::complete, n));
    const double curvature = 1.0 / 6 + 2 * opt.theta_star[0];  // mu = L here

    for (double alpha : {0.1, 0.5, 1.9 / curvature}) {
        SwarmState state;
        Eigen::VectorXd x0 = Eigen::VectorXd::Constant(5, 2.0);
        state.x = x0.replicate(1, n);
        state.theta = opt.theta_star.replicate(1, n);
        auto half = sgd_phase(prob, state, alpha, 0.0, RunRng(5));
        auto next = mix_phase(w, half, 1);
        double before = (x0 - opt.x_star).norm();
        double after = (next.x.rowwise().mean() - opt.x_star).norm();
        double lambda = std::max(std::abs(1 - alpha * curvature), std::abs(1 - alpha * curvature));
        CHECK(after <= lambda * before + 1e-9);
    }
}

TEST_CASE("run: contract checks, recording, determinism") {
    RidgeProblem prob({3});
    auto w = metropolis_weights(build_topology(TopologyKind::path, 3));
    auto policy = StepsizePolicy::explicit_schedule(20, 20);
    auto opt = *prob.optimum();
    SwarmState init = ridge_start(3);

    CHECK_THROWS_AS(run(prob, w, policy, init, {0, 1, {}}, opt), std::invalid_argument);

    auto one = run(prob, w, policy, init, {1, 7, {1}}, opt);
    CHECK(one.recorded_k == std::vector<long>{1});
    CHECK(one.size() == 1);

    RunConfig rc{100, 7, recording_schedule(100, {100, 10})};
    auto a = run(prob, w, policy, init, rc, opt);
    auto b = run(prob, w, policy, init, rc, opt);
    CHECK(a.recorded_k == b.recorded_k);
    CHECK(a.u1 == b.u1);
    CHECK(a.v1 == b.v1);
    CHECK(a.mse_x == b.mse_x);
    CHECK(a.meta.max_x_dev == b.meta.max_x_dev);
}

TEST_CASE("run aborts with the iteration index on non-finite state") {
    NanProblem prob(2);
    auto w = metropolis_weights(build_topology(TopologyKind::path, 2));
    auto policy = StepsizePolicy::explicit_schedule(1, 1);
    SwarmState init;
    init.x = Eigen::MatrixXd::Zero(2, 2);
    init.theta = Eigen::MatrixXd::Zero(1, 2);
    Optimum opt{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1)};
    CHECK_THROWS_WITH_AS(run(prob, w, policy, init, {5, 1, {1}}, opt),
                         doctest::Contains("iteration 1"), std::runtime_error);
}

TEST_CASE("single agent reduces to plain sgd and its error decays") {
    // centralized baseline: n = 1, W = [1]
    RidgeProblem prob({1});
    Topology t;
    t.kind = TopologyKind::custom;
    t.n = 1;
    t.degree = {0};
    WeightMatrix w;
    w.w = Eigen::MatrixXd::Ones(1, 1);
    w.rho_w = 0.0;
    auto policy = StepsizePolicy::explicit_schedule(20, 20);
    auto opt = *prob.optimum();
    SwarmState init = ridge_start(1);

    auto schedule = recording_schedule(5000, {100, 100});
    std::vector<RunTrace> traces;
    for (long p = 0; p < 200; ++p)
        traces.push_back(run(prob, w, policy, init, {5000, path_seed(42, p), schedule}, opt));
    auto avg = average_traces(traces);

    auto value_at = [&](long k) {
        for (std::size_t i = 0; i < avg.recorded_k.size(); ++i)
            if (avg.recorded_k[i] >= k) return avg.mse_x[i];
        return avg.mse_x.back();
    };
    double at1000 = value_at(1000), at5000 = avg.mse_x.back();
    CHECK(at5000 > 0.0);
    CHECK(at5000 < at1000);
    for (double v : avg.mse_x) CHECK(v > 0.0);
}
