#include "cdsa/ridge.hpp"

#include <stdexcept>

namespace cdsa {

namespace {
constexpr double kFeatureVar = 1.0 / 12.0;  // Var of Uniform(-1/2, 1/2)
constexpr double kNoiseStd = 0.1;
}  // namespace

RidgeProblem::RidgeProblem(Params params) : n_(params.n), learn_noise_std_(params.learn_noise_std) {
    if (n_ < 1) throw std::invalid_argument("RidgeProblem requires n >= 1");
    if (learn_noise_std_ < 0.0) throw std::invalid_argument("learn_noise_std must be >= 0");
}

Eigen::VectorXd RidgeProblem::x_tilde() {
    Eigen::VectorXd t(kDim);
    t << 1.0, 3.0, 5.0, 4.0, 9.0;
    return t;
}

Eigen::VectorXd RidgeProblem::x_star_for_theta(double theta) {
    return (kFeatureVar / (kFeatureVar + theta)) * x_tilde();
}

Optimum RidgeProblem::closed_form_optimum(int n) {
    double theta_star = 0.005 * (n + 1);
    Optimum opt;
    opt.x_star = x_star_for_theta(theta_star);
    opt.theta_star = Eigen::VectorXd::Constant(1, theta_star);
    return opt;
}

std::pair<Eigen::VectorXd, double> RidgeProblem::sample(RngStream& rng) const {
    Eigen::VectorXd u(kDim);
    for (int i = 0; i < kDim; ++i) u[i] = rng.uniform(-0.5, 0.5);
    double v = observe(u, rng);
    return {std::move(u), v};
}

double RidgeProblem::observe(const Eigen::Ref<const Eigen::VectorXd>& u, RngStream& rng) const {
    return u.dot(x_tilde()) + rng.normal(0.0, kNoiseStd);
}

Eigen::VectorXd RidgeProblem::sample_grad(const Eigen::Ref<const Eigen::VectorXd>& x, double theta,
                                          const Eigen::Ref<const Eigen::VectorXd>& u, double v) {
    return 2.0 * (u.dot(x) - v) * u + 2.0 * theta * x;
}

double RidgeProblem::sample_loss(const Eigen::Ref<const Eigen::VectorXd>& x, double theta,
                                 const Eigen::Ref<const Eigen::VectorXd>& u, double v) {
    double r = u.dot(x) - v;
    return r * r + theta * x.squaredNorm();
}

void RidgeProblem::comp_grad(int, const Eigen::Ref<const Eigen::VectorXd>& x,
                             const Eigen::Ref<const Eigen::VectorXd>& theta, RngStream& rng,
                             Eigen::Ref<Eigen::VectorXd> out) const {
    auto [u, v] = sample(rng);
    out = 2.0 * (u.dot(x) - v) * u + 2.0 * theta[0] * x;
}

void RidgeProblem::learn_grad(int agent, const Eigen::Ref<const Eigen::VectorXd>& theta,
                              RngStream& rng, Eigen::Ref<Eigen::VectorXd> out) const {
    out[0] = 2.0 * (theta[0] - alpha(agent));
    if (learn_noise_std_ > 0.0) out[0] += rng.normal(0.0, learn_noise_std_);
}

Eigen::VectorXd RidgeProblem::exact_comp_grad(int, const Eigen::Ref<const Eigen::VectorXd>& x,
                                              const Eigen::Ref<const Eigen::VectorXd>& theta) const {
    // E[g] = 2 E[u u^T] (x - x_tilde) + 2 theta x = (1/6 + 2 theta) x - (1/6) x_tilde.
    return (2.0 * kFeatureVar + 2.0 * theta[0]) * x - 2.0 * kFeatureVar * x_tilde();
}

Eigen::VectorXd RidgeProblem::exact_learn_grad(int agent,
                                               const Eigen::Ref<const Eigen::VectorXd>& theta) const {
    return Eigen::VectorXd::Constant(1, 2.0 * (theta[0] - alpha(agent)));
}

std::optional<AnalyticConstants> RidgeProblem::analytic_constants() const {
    // Expected Hessian in x is (1/6 + 2 theta) I; evaluated at theta*.
    double theta_star = 0.005 * (n_ + 1);
    double curvature = 2.0 * kFeatureVar + 2.0 * theta_star;

    // Oracle variance at the optimum, from the moments of u and eps:
    // E|g|^2 = 4 (29/720 |d|^2 + sigma_eps^2 * 5/12) + (8 theta*/12) d.x* + 4 theta*^2 |x*|^2
    // with d = x* - x_tilde. (E[u_i^2 |u|^2] = 1/80 + 4/144 = 29/720.)
    Eigen::VectorXd xs = x_star_for_theta(theta_star);
    Eigen::VectorXd d = xs - x_tilde();
    double var = 4.0 * ((29.0 / 720.0) * d.squaredNorm() + kNoiseStd * kNoiseStd * (5.0 / 12.0)) +
                 (8.0 * theta_star / 12.0) * d.dot(xs) + 4.0 * theta_star * theta_star * xs.squaredNorm();

    AnalyticConstants c;
    c.mu_x = curvature;
    c.L_x = curvature;
    c.mu_theta = 2.0;  // h_i(theta) = (theta - alpha_i)^2
    c.L_theta = 2.0;
    c.M_x = 6.0;  // covers the growth of the sampling variance relative to |grad f|^2 near theta*
    c.M_theta = 0.0;
    c.sigma_x = std::sqrt(var);
    c.sigma_theta = learn_noise_std_;
    return c;
}

}  // namespace cdsa
