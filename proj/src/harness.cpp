#include "cdsa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cdsa/logistic.hpp"
#include "cdsa/ridge.hpp"

namespace cdsa {

std::vector<long> recording_schedule(long k_max, const RecordSpec& record) {
    if (k_max < 1) throw std::invalid_argument("recording_schedule requires k_max >= 1");
    std::vector<long> ks;
    long dense = std::min(record.dense_until, k_max);
    for (long k = 1; k <= dense; ++k) ks.push_back(k);
    if (k_max > dense && record.log_points > 0) {
        double lo = std::log10(static_cast<double>(std::max<long>(dense, 1)));
        double hi = std::log10(static_cast<double>(k_max));
        for (int i = 1; i <= record.log_points; ++i) {
            double f = lo + (hi - lo) * static_cast<double>(i) / record.log_points;
            long k = static_cast<long>(std::llround(std::pow(10.0, f)));
            ks.push_back(std::clamp<long>(k, 1, k_max));
        }
    }
    ks.push_back(k_max);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

std::uint64_t path_seed(std::uint64_t master_seed, long path_index) {
    return derive_key(master_seed, {stream_tag::path, static_cast<std::uint64_t>(path_index)});
}

std::unique_ptr<CoupledProblem> make_problem(const ProblemSpec& spec, int n) {
    switch (spec.kind) {
        case ProblemSpec::Kind::ridge:
            return std::make_unique<RidgeProblem>(RidgeProblem::Params{n, spec.learn_noise_std});
        case ProblemSpec::Kind::logistic:
            return std::make_unique<LogisticProblem>(LogisticProblem::with_reference_optimum(
                LogisticProblem::Params{n, spec.samples_per_agent, spec.data_seed}));
    }
    throw std::invalid_argument("unknown problem kind");
}

Topology make_topology(const TopologySpec& spec) {
    switch (spec.kind) {
        case TopologyKind::mesh2d:
            return build_mesh2d(spec.rows, spec.cols);
        case TopologyKind::custom:
            return build_custom(spec.n, spec.edges);
        default:
            return build_topology(spec.kind, spec.n);
    }
}

StepsizePolicy make_policy(const PolicySpec& spec, const CoupledProblem& problem) {
    if (spec.kind == PolicySpec::Kind::explicit_schedule)
        return StepsizePolicy::explicit_schedule(spec.a, spec.b);
    auto constants = problem.analytic_constants();
    if (!constants)
        throw std::invalid_argument(
            "harmonic policy requires a problem with analytic constants; this one has none");
    long offset = stepsize_offset(spec.beta, constants->M_x, constants->L_x, constants->mu_x,
                                  constants->M_theta, constants->L_theta, constants->mu_theta);
    return StepsizePolicy::harmonic(spec.beta, offset, constants->mu_x, constants->mu_theta);
}

SwarmState initial_state(const ProblemSpec& spec, const CoupledProblem& problem) {
    SwarmState s;
    s.x = Eigen::MatrixXd::Zero(problem.decision_dim(), problem.agent_count());
    s.theta = spec.kind == ProblemSpec::Kind::ridge
                  ? Eigen::MatrixXd::Ones(problem.parameter_dim(), problem.agent_count())
                  : Eigen::MatrixXd::Zero(problem.parameter_dim(), problem.agent_count());
    s.k = 0;
    return s;
}

namespace {

RunTrace monte_carlo_with(const ExperimentConfig& cfg, const CoupledProblem& problem) {
    Topology topo = make_topology(cfg.topology);
    if (topo.n != problem.agent_count())
        throw std::invalid_argument("topology size does not match problem agent count");
    WeightMatrix w = metropolis_weights(topo);
    StepsizePolicy policy = make_policy(cfg.policy, problem);
    SwarmState init = initial_state(cfg.problem, problem);
    auto opt = problem.optimum();
    if (!opt) throw std::invalid_argument("monte_carlo requires a problem with a known optimum");
    std::vector<long> schedule = recording_schedule(cfg.k_max, cfg.record);

    const long paths = cfg.paths;
    std::vector<RunTrace> traces(paths);
    std::vector<std::string> failures(paths);

    int workers = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp<int>(workers, 1, static_cast<int>(paths));

    std::atomic<long> next{0};
    auto work = [&]() {
        for (long p = next.fetch_add(1); p < paths; p = next.fetch_add(1)) {
            try {
                RunConfig rc{cfg.k_max, path_seed(cfg.master_seed, p), schedule};
                traces[p] = run(problem, w, policy, init, rc, *opt);
            } catch (const std::exception& e) {
                failures[p] = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (long p = 0; p < paths; ++p)
        if (!failures[p].empty())
            throw std::runtime_error("path " + std::to_string(p) + ": " + failures[p]);

    RunTrace avg = average_traces(traces);
    avg.meta.seed = cfg.master_seed;
    avg.meta.topology = describe_topology(cfg.topology);
    return avg;
}

}  // namespace

RunTrace monte_carlo(const ExperimentConfig& cfg) {
    auto problem = make_problem(cfg.problem, cfg.topology.n);
    return monte_carlo_with(cfg, *problem);
}

SweepResult sweep(const ExperimentConfig& base, std::span<const TopologySpec> axis) {
    if (axis.empty()) throw std::invalid_argument("sweep requires a non-empty axis");
    SweepResult result;
    result.traces.reserve(axis.size());
    // Problems are reused across equal-n points so datasets and reference
    // optima stay identical.
    std::vector<std::pair<int, std::unique_ptr<CoupledProblem>>> cache;
    for (const auto& point : axis) {
        ExperimentConfig cfg = base;
        cfg.topology = point;
        try {
            CoupledProblem* problem = nullptr;
            for (auto& [n, p] : cache)
                if (n == point.n) problem = p.get();
            if (!problem) {
                cache.emplace_back(point.n, make_problem(cfg.problem, point.n));
                problem = cache.back().second.get();
            }
            result.traces.push_back(monte_carlo_with(cfg, *problem));
        } catch (const std::exception& e) {
            result.failures.push_back(describe_topology(point) + ": " + e.what());
        }
    }
    return result;
}

}  // namespace cdsa
