#include "cdsa/trace.hpp"

#include <stdexcept>

#include "cdsa/swarm.hpp"

namespace cdsa {

ErrorPoint errors_at(const SwarmState& state, const Optimum& opt) {
    if (state.x.rows() != opt.x_star.size() || state.theta.rows() != opt.theta_star.size())
        throw std::invalid_argument("errors_at: optimum dimensions do not match the state");
    const double n = static_cast<double>(state.x.cols());

    Eigen::VectorXd x_bar = state.x.rowwise().mean();
    Eigen::VectorXd theta_bar = state.theta.rowwise().mean();

    ErrorPoint e;
    e.u1 = (x_bar - opt.x_star).squaredNorm();
    e.u2 = (theta_bar - opt.theta_star).squaredNorm();
    e.v1 = (state.x.colwise() - x_bar).squaredNorm();
    e.v2 = (state.theta.colwise() - theta_bar).squaredNorm();
    e.mse_x = (state.x.colwise() - opt.x_star).squaredNorm() / n;
    e.mse_theta = (state.theta.colwise() - opt.theta_star).squaredNorm() / n;
    return e;
}

void RunTrace::append(long k, const ErrorPoint& e) {
    recorded_k.push_back(k);
    u1.push_back(e.u1);
    v1.push_back(e.v1);
    u2.push_back(e.u2);
    v2.push_back(e.v2);
    mse_x.push_back(e.mse_x);
    mse_theta.push_back(e.mse_theta);
}

Metric metric_from_string(std::string_view name) {
    if (name == "U1") return Metric::u1;
    if (name == "V1") return Metric::v1;
    if (name == "U2") return Metric::u2;
    if (name == "V2") return Metric::v2;
    if (name == "mse_x") return Metric::mse_x;
    if (name == "mse_theta") return Metric::mse_theta;
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::string to_string(Metric m) {
    switch (m) {
        case Metric::u1: return "U1";
        case Metric::v1: return "V1";
        case Metric::u2: return "U2";
        case Metric::v2: return "V2";
        case Metric::mse_x: return "mse_x";
        case Metric::mse_theta: return "mse_theta";
    }
    return "?";
}

std::span<const double> metric_values(const RunTrace& trace, Metric m) {
    switch (m) {
        case Metric::u1: return trace.u1;
        case Metric::v1: return trace.v1;
        case Metric::u2: return trace.u2;
        case Metric::v2: return trace.v2;
        case Metric::mse_x: return trace.mse_x;
        case Metric::mse_theta: return trace.mse_theta;
    }
    return {};
}

RunTrace average_traces(const std::vector<RunTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("average_traces requires at least one trace");
    const auto& first = traces.front();
    for (const auto& t : traces)
        if (t.recorded_k != first.recorded_k)
            throw std::invalid_argument("average_traces: recording schedules differ");

    RunTrace avg;
    avg.recorded_k = first.recorded_k;
    avg.meta = first.meta;
    const std::size_t count = first.size();
    avg.u1.assign(count, 0.0);
    avg.v1.assign(count, 0.0);
    avg.u2.assign(count, 0.0);
    avg.v2.assign(count, 0.0);
    avg.mse_x.assign(count, 0.0);
    avg.mse_theta.assign(count, 0.0);

    long paths = 0;
    double max_x = 0.0, max_theta = 0.0;
    for (const auto& t : traces) {
        for (std::size_t i = 0; i < count; ++i) {
            avg.u1[i] += t.u1[i];
            avg.v1[i] += t.v1[i];
            avg.u2[i] += t.u2[i];
            avg.v2[i] += t.v2[i];
            avg.mse_x[i] += t.mse_x[i];
            avg.mse_theta[i] += t.mse_theta[i];
        }
        paths += t.meta.paths;
        max_x = std::max(max_x, t.meta.max_x_dev);
        max_theta = std::max(max_theta, t.meta.max_theta_dev);
    }
    const double inv = 1.0 / static_cast<double>(traces.size());
    for (std::size_t i = 0; i < count; ++i) {
        avg.u1[i] *= inv;
        avg.v1[i] *= inv;
        avg.u2[i] *= inv;
        avg.v2[i] *= inv;
        avg.mse_x[i] *= inv;
        avg.mse_theta[i] *= inv;
    }
    avg.meta.paths = paths;
    avg.meta.max_x_dev = max_x;
    avg.meta.max_theta_dev = max_theta;
    return avg;
}

}  // namespace cdsa
