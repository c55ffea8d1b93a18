#include "cdsa/validate.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cdsa {

namespace {

// Least squares of y on x with intercept; slope clamped at 0 so a constant
// variance profile reports M = 0.
VarianceFit fit_variance(const std::vector<double>& grad_norm2, const std::vector<double>& variance) {
    const double n = static_cast<double>(grad_norm2.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < grad_norm2.size(); ++i) {
        mx += grad_norm2[i];
        my += variance[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < grad_norm2.size(); ++i) {
        sxx += (grad_norm2[i] - mx) * (grad_norm2[i] - mx);
        sxy += (grad_norm2[i] - mx) * (variance[i] - my);
    }
    VarianceFit fit;
    fit.m = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;
    fit.sigma2 = std::max(0.0, my - fit.m * mx);
    return fit;
}

OracleCheck check_oracle(int dim, const Eigen::VectorXd& exact,
                         const std::function<void(Eigen::Ref<Eigen::VectorXd>)>& draw, int draws) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(dim);  // per-coordinate sum of squared deviations
    Eigen::VectorXd g(dim);
    for (int d = 1; d <= draws; ++d) {
        draw(g);
        Eigen::VectorXd delta = g - mean;
        mean += delta / static_cast<double>(d);
        m2 += delta.cwiseProduct(g - mean);
    }
    Eigen::VectorXd var = m2 / static_cast<double>(draws > 1 ? draws - 1 : 1);

    OracleCheck c;
    c.gap = (mean - exact).norm();
    c.std_error = std::sqrt(var.sum() / static_cast<double>(draws));
    c.variance = var.sum();
    c.grad_norm2 = exact.squaredNorm();
    // A zero-variance (deterministic) oracle must match exactly.
    c.flagged = c.std_error > 0.0 ? c.gap > 4.0 * c.std_error : c.gap > 1e-12;
    return c;
}

}  // namespace

ValidationReport validate_assumptions(const CoupledProblem& problem, int point_count,
                                      int draws_per_point, std::uint64_t seed) {
    if (point_count < 2 || draws_per_point < 2)
        throw std::invalid_argument("validate_assumptions requires >= 2 points and >= 2 draws");

    const int p = problem.decision_dim();
    const int q = problem.parameter_dim();
    ValidationReport report;
    report.any_flagged = false;

    std::vector<double> comp_g2, comp_var, learn_g2, learn_var;
    for (int pt = 0; pt < point_count; ++pt) {
        RngStream probe(derive_key(seed, {0x70726f6265ull, static_cast<std::uint64_t>(pt)}));
        int agent = static_cast<int>(probe.next_u64() % static_cast<std::uint64_t>(problem.agent_count()));
        Eigen::VectorXd x(p), theta(q);
        for (int i = 0; i < p; ++i) x[i] = probe.uniform(-2.0, 2.0);
        for (int i = 0; i < q; ++i) theta[i] = probe.uniform(0.0, 1.0);

        ValidationPoint point;
        point.agent = agent;

        RngStream comp_rng(derive_key(seed, {stream_tag::comp, static_cast<std::uint64_t>(pt)}));
        point.comp = check_oracle(
            p, problem.exact_comp_grad(agent, x, theta),
            [&](Eigen::Ref<Eigen::VectorXd> out) { problem.comp_grad(agent, x, theta, comp_rng, out); },
            draws_per_point);

        RngStream learn_rng(derive_key(seed, {stream_tag::learn, static_cast<std::uint64_t>(pt)}));
        point.learn = check_oracle(
            q, problem.exact_learn_grad(agent, theta),
            [&](Eigen::Ref<Eigen::VectorXd> out) { problem.learn_grad(agent, theta, learn_rng, out); },
            draws_per_point);

        report.any_flagged = report.any_flagged || point.comp.flagged || point.learn.flagged;
        comp_g2.push_back(point.comp.grad_norm2);
        comp_var.push_back(point.comp.variance);
        learn_g2.push_back(point.learn.grad_norm2);
        learn_var.push_back(point.learn.variance);
        report.points.push_back(point);
    }

    report.comp_fit = fit_variance(comp_g2, comp_var);
    report.learn_fit = fit_variance(learn_g2, learn_var);
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream os;
    os << "oracle unbiasedness (" << report.points.size() << " probe points)\n";
    os << "  point  agent  comp_gap      comp_4se      learn_gap     learn_4se     status\n";
    int idx = 0;
    for (const auto& pt : report.points) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-5d  %-5d  %-12.4e  %-12.4e  %-12.4e  %-12.4e  %s\n", idx++,
                      pt.agent, pt.comp.gap, 4.0 * pt.comp.std_error, pt.learn.gap,
                      4.0 * pt.learn.std_error, (pt.comp.flagged || pt.learn.flagged) ? "FLAGGED" : "ok");
        os << line;
    }
    char fitline[160];
    std::snprintf(fitline, sizeof(fitline),
                  "variance fit: comp sigma2=%.4e M=%.4e | learn sigma2=%.4e M=%.4e\n",
                  report.comp_fit.sigma2, report.comp_fit.m, report.learn_fit.sigma2,
                  report.learn_fit.m);
    os << fitline;
    os << (report.any_flagged ? "RESULT: FLAGGED (some oracle means exceed 4 standard errors)\n"
                              : "RESULT: ok (all oracle means within 4 standard errors)\n");
    return os.str();
}

}  // namespace cdsa
