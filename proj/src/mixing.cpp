#include "cdsa/mixing.hpp"

#include <cmath>
#include <stdexcept>

#include "cdsa/rng.hpp"

namespace cdsa {

namespace {

constexpr double kStochasticTol = 1e-12;
// Successive norm-ratio differences decay like the square of the eigenvalue
// ratio; 1e-13 here keeps the accepted value within 1e-10 of the true radius
// for every graph in scope.
constexpr double kSuccessiveTol = 1e-13;
constexpr int kPowerCap = 100000;
constexpr int kRestartEvery = 20000;

void require_symmetric_doubly_stochastic(const Eigen::MatrixXd& w) {
    if (w.rows() != w.cols() || w.rows() < 1)
        throw std::invalid_argument("weight matrix must be square and non-empty");
    const auto n = w.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(w.row(i).sum() - 1.0) > kStochasticTol)
            throw std::invalid_argument("weight matrix row sums must equal 1");
        if (std::abs(w.col(i).sum() - 1.0) > kStochasticTol)
            throw std::invalid_argument("weight matrix column sums must equal 1");
    }
    if ((w - w.transpose()).cwiseAbs().maxCoeff() > kStochasticTol)
        throw std::invalid_argument("weight matrix must be symmetric");
}

Eigen::VectorXd fresh_start(Eigen::Index n, std::uint64_t salt) {
    RngStream rng(derive_key(0x5bec7a11ull, {salt}));
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal(0.0, 1.0);
    double norm = v.norm();
    if (norm == 0.0) v.setOnes(), norm = v.norm();
    return v / norm;
}

}  // namespace

SpectralGap spectral_gap(const Eigen::MatrixXd& w) {
    require_symmetric_doubly_stochastic(w);
    const auto n = w.rows();
    if (n == 1) return {0.0, 1.0};

    // Deviation operator B = W - ones*ones^T/n applied matrix-free. B is
    // symmetric, so the norm-ratio estimate converges to |lambda|_max.
    const auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return w * v - Eigen::VectorXd::Constant(n, v.mean());
    };

    double best = -1.0;
    int iters = 0;
    std::uint64_t round = 0;
    while (iters < kPowerCap) {
        Eigen::VectorXd v = fresh_start(n, round++);
        double prev = -1.0;
        int stable = 0;
        for (int r = 0; r < kRestartEvery && iters < kPowerCap; ++r, ++iters) {
            Eigen::VectorXd u = apply(v);
            double lambda = u.norm();
            if (lambda < 1e-14) return {0.0, 1.0};  // deviation subspace annihilated
            v = u / lambda;
            if (std::abs(lambda - prev) < kSuccessiveTol) {
                if (++stable >= 3) {
                    best = std::max(best, lambda);
                    break;
                }
            } else {
                stable = 0;
            }
            prev = lambda;
        }
        if (best >= 0.0) break;
    }
    if (best < 0.0)
        throw std::runtime_error("spectral_gap: power iteration did not converge (malformed matrix?)");
    best = std::min(best, 1.0);
    return {best, 1.0 - best};
}

WeightMatrix metropolis_weights(const Topology& t) {
    if (!check_connected(t)) throw std::invalid_argument("metropolis_weights requires a connected topology");
    WeightMatrix wm;
    wm.w = Eigen::MatrixXd::Zero(t.n, t.n);
    for (const auto& [i, j] : t.edges) {
        double wij = 1.0 / (1.0 + std::max(t.degree[i], t.degree[j]));
        wm.w(i, j) = wij;
        wm.w(j, i) = wij;
    }
    for (int i = 0; i < t.n; ++i) wm.w(i, i) = 1.0 - wm.w.row(i).sum();
    wm.rho_w = spectral_gap(wm.w).rho_w;
    return wm;
}

}  // namespace cdsa
