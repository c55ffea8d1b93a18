#include "cdsa/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace cdsa {

namespace {

// sigma(-l * eta.x) evaluated without overflow for large |eta.x|.
double misfit(double label_dot) {
    // 1 / (1 + e^z) with z = label_dot; exp may overflow to inf, which
    // still yields the correct limit 0.
    if (label_dot >= 0.0) {
        double e = std::exp(-label_dot);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(label_dot));
}

}  // namespace

LogisticDataset logistic_generate_data(int agent, int m, std::uint64_t seed) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("logistic dataset size must be even and >= 2");
    RngStream rng(derive_key(seed, {stream_tag::dataset, static_cast<std::uint64_t>(agent)}));
    LogisticDataset d;
    d.x.resize(m, 3);
    d.labels.resize(m);
    for (int j = 0; j < m; ++j) {
        bool positive = j < m / 2;
        d.x(j, 0) = 1.0;
        d.x(j, 1) = rng.normal(positive ? 1.0 : 0.0, 1.0);
        d.x(j, 2) = rng.normal(positive ? 0.0 : 1.0, 1.0);
        d.labels[j] = positive ? 1 : -1;
    }
    return d;
}

LogisticProblem::LogisticProblem(Params params) : n_(params.n) {
    if (n_ < 1) throw std::invalid_argument("LogisticProblem requires n >= 1");
    data_.reserve(n_);
    for (int i = 0; i < n_; ++i)
        data_.push_back(logistic_generate_data(i, params.samples_per_agent, params.data_seed));
}

LogisticProblem::LogisticProblem(std::vector<LogisticDataset> data)
    : n_(static_cast<int>(data.size())), data_(std::move(data)) {
    if (n_ < 1) throw std::invalid_argument("LogisticProblem requires at least one dataset");
    for (const auto& d : data_)
        if (d.labels.size() < 1 || d.x.rows() != d.labels.size() || d.x.cols() != 3)
            throw std::invalid_argument("LogisticProblem dataset has inconsistent dimensions");
}

LogisticProblem LogisticProblem::with_reference_optimum(Params params) {
    LogisticProblem p(params);
    Optimum opt;
    opt.theta_star = Eigen::VectorXd::Constant(1, p.theta_star());
    opt.x_star = logistic_reference_optimum(p, p.theta_star());
    p.optimum_ = std::move(opt);
    return p;
}

double LogisticProblem::sample_loss(int agent, int j, const Eigen::Ref<const Eigen::VectorXd>& eta,
                                    double theta) const {
    const auto& d = data_[agent];
    double z = d.labels[j] * d.x.row(j).dot(eta);
    // ln(1 + e^{-z}), stable on both tails.
    double data_term = z >= 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
    int m = static_cast<int>(d.labels.size());
    return m * data_term + theta / (2.0 * n_) * eta.squaredNorm();
}

Eigen::VectorXd LogisticProblem::sample_grad(int agent, int j,
                                             const Eigen::Ref<const Eigen::VectorXd>& eta,
                                             double theta) const {
    const auto& d = data_[agent];
    int m = static_cast<int>(d.labels.size());
    double l = d.labels[j];
    double s = misfit(l * d.x.row(j).dot(eta));
    return m * (-l * s) * d.x.row(j).transpose() + (theta / n_) * eta;
}

void LogisticProblem::comp_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& eta,
                                const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                                Eigen::Ref<Eigen::VectorXd> out) const {
    const auto& d = data_[agent];
    int m = static_cast<int>(d.labels.size());
    int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m));
    out = sample_grad(agent, j, eta, theta[0]);
}

void LogisticProblem::learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta,
                                 RngStream&, Eigen::Ref<Eigen::VectorXd> out) const {
    out[0] = 2.0 * (theta[0] - alpha(agent));
}

Eigen::VectorXd LogisticProblem::exact_comp_grad(int agent,
                                                 const Eigen::Ref<const Eigen::VectorXd>& eta,
                                                 const Eigen::Ref<const Eigen::VectorXd>& theta) const {
    const auto& d = data_[agent];
    Eigen::VectorXd g = (theta[0] / n_) * eta;
    for (int j = 0; j < d.labels.size(); ++j) {
        double l = d.labels[j];
        g -= l * misfit(l * d.x.row(j).dot(eta)) * d.x.row(j).transpose();
    }
    return g;
}

Eigen::VectorXd LogisticProblem::exact_learn_grad(int agent,
                                                  const Eigen::Ref<const Eigen::VectorXd>& theta) const {
    return Eigen::VectorXd::Constant(1, 2.0 * (theta[0] - alpha(agent)));
}

Eigen::VectorXd logistic_reference_optimum(const LogisticProblem& problem, double theta_star) {
    if (!(theta_star > 0.0))
        throw std::invalid_argument("logistic_reference_optimum requires theta_star > 0");
    const int n = problem.agent_count();

    // Pooled gradient: sum_i grad f_i(eta, theta*) = data terms + theta* eta.
    const auto pooled_grad = [&](const Eigen::VectorXd& eta) {
        Eigen::VectorXd g = theta_star * eta;
        for (int i = 0; i < n; ++i) {
            const auto& d = problem.dataset(i);
            for (int j = 0; j < d.labels.size(); ++j) {
                double l = d.labels[j];
                g -= l * misfit(l * d.x.row(j).dot(eta)) * d.x.row(j).transpose();
            }
        }
        return g;
    };

    // Global Lipschitz bound of the pooled gradient.
    double lipschitz = theta_star;
    for (int i = 0; i < n; ++i) lipschitz += 0.25 * problem.dataset(i).x.squaredNorm();

    const double tol = 1e-10;
    const long cap = 1000000;
    double step = 1.0 / lipschitz;
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(3);
    for (long it = 0; it < cap; ++it) {
        Eigen::VectorXd g = pooled_grad(eta);
        if (g.norm() < tol) return eta;
        eta -= step * g;
    }
    throw std::runtime_error("logistic_reference_optimum: gradient descent did not reach tolerance");
}

}  // namespace cdsa
