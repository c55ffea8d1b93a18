#include "cdsa/swarm.hpp"

#include <sstream>
#include <stdexcept>

namespace cdsa {

namespace {

void sgd_phase_into(const CoupledProblem& problem, const Eigen::MatrixXd& x,
                    const Eigen::MatrixXd& theta, long k, double alpha, double gamma,
                    const RunRng& rng, SgdPhaseResult& out) {
    const int n = problem.agent_count();
    for (int i = 0; i < n; ++i) {
        RngStream comp_rng = rng.comp_stream(i, k);
        RngStream learn_rng = rng.learn_stream(i, k);
        problem.comp_grad(i, x.col(i), theta.col(i), comp_rng, out.comp_grads.col(i));
        problem.learn_grad(i, theta.col(i), learn_rng, out.learn_grads.col(i));
    }
    out.x_half = x - alpha * out.comp_grads;
    out.theta_half = theta - gamma * out.learn_grads;
}

void check_dims(const CoupledProblem& problem, const WeightMatrix& w, const SwarmState& state) {
    const int n = problem.agent_count();
    if (w.w.rows() != n || w.w.cols() != n)
        throw std::invalid_argument("weight matrix size does not match the problem's agent count");
    if (state.x.rows() != problem.decision_dim() || state.x.cols() != n ||
        state.theta.rows() != problem.parameter_dim() || state.theta.cols() != n)
        throw std::invalid_argument("swarm state dimensions do not match the problem");
}

}  // namespace

SgdPhaseResult sgd_phase(const CoupledProblem& problem, const SwarmState& state, double alpha,
                         double gamma, const RunRng& rng) {
    if (!(alpha >= 0.0) || !(gamma >= 0.0))
        throw std::invalid_argument("sgd_phase requires nonnegative step sizes");
    SgdPhaseResult out;
    const int n = problem.agent_count();
    out.x_half.resize(problem.decision_dim(), n);
    out.theta_half.resize(problem.parameter_dim(), n);
    out.comp_grads.resize(problem.decision_dim(), n);
    out.learn_grads.resize(problem.parameter_dim(), n);
    sgd_phase_into(problem, state.x, state.theta, state.k, alpha, gamma, rng, out);
    if (!out.comp_grads.allFinite() || !out.learn_grads.allFinite())
        throw std::runtime_error("sgd_phase: oracle returned a non-finite gradient");
    return out;
}

SwarmState mix_phase(const WeightMatrix& w, const SgdPhaseResult& half, long next_k) {
    SwarmState next;
    next.x.noalias() = half.x_half * w.w.transpose();
    next.theta.noalias() = half.theta_half * w.w.transpose();
    next.k = next_k;
    return next;
}

RunTrace run(const CoupledProblem& problem, const WeightMatrix& w, const StepsizePolicy& policy,
             SwarmState state, const RunConfig& cfg, const Optimum& opt) {
    if (cfg.k_max < 1) throw std::invalid_argument("run requires k_max >= 1");
    check_dims(problem, w, state);
    state.k = 0;  // runs always start the schedule at iteration 0

    const int n = problem.agent_count();
    RunRng rng(cfg.seed);
    SgdPhaseResult half;
    half.x_half.resize(problem.decision_dim(), n);
    half.theta_half.resize(problem.parameter_dim(), n);
    half.comp_grads.resize(problem.decision_dim(), n);
    half.learn_grads.resize(problem.parameter_dim(), n);

    RunTrace trace;
    trace.recorded_k.reserve(cfg.record_ks.size());
    trace.meta.n = n;
    trace.meta.seed = cfg.seed;
    trace.meta.k_max = cfg.k_max;
    trace.meta.policy = policy.describe();
    trace.meta.rho_w = w.rho_w;

    std::size_t next_record = 0;
    while (next_record < cfg.record_ks.size() && cfg.record_ks[next_record] < 1) ++next_record;

    Eigen::MatrixXd x_next(problem.decision_dim(), n), theta_next(problem.parameter_dim(), n);
    for (long step = 0; step < cfg.k_max; ++step) {
        auto [alpha, gamma] = policy.at(state.k);
        sgd_phase_into(problem, state.x, state.theta, state.k, alpha, gamma, rng, half);
        x_next.noalias() = half.x_half * w.w.transpose();
        theta_next.noalias() = half.theta_half * w.w.transpose();
        state.x.swap(x_next);
        state.theta.swap(theta_next);
        state.k = step + 1;

        if (!state.x.allFinite() || !state.theta.allFinite()) {
            std::ostringstream os;
            os << "run aborted: non-finite iterate at iteration " << state.k;
            throw std::runtime_error(os.str());
        }

        double x_dev = (state.x.colwise() - opt.x_star).colwise().norm().maxCoeff();
        double theta_dev = (state.theta.colwise() - opt.theta_star).colwise().norm().maxCoeff();
        trace.meta.max_x_dev = std::max(trace.meta.max_x_dev, x_dev);
        trace.meta.max_theta_dev = std::max(trace.meta.max_theta_dev, theta_dev);

        if (next_record < cfg.record_ks.size() && cfg.record_ks[next_record] == state.k) {
            trace.append(state.k, errors_at(state, opt));
            while (next_record < cfg.record_ks.size() && cfg.record_ks[next_record] <= state.k)
                ++next_record;
        }
    }
    return trace;
}

}  // namespace cdsa
