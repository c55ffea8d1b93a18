#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "cdsa/metrics.hpp"
#include "cdsa/mixing.hpp"
#include "cdsa/swarm.hpp"

using namespace cdsa;

namespace {

RunTrace synthetic(const std::vector<long>& ks, double (*f)(double)) {
    RunTrace t;
    for (long k : ks) {
        double v = f(static_cast<double>(k));
        t.append(k, {v, v, v, v, v, v});
    }
    return t;
}

std::vector<long> log_ks(long lo, long hi, int count) {
    std::vector<long> ks;
    for (int i = 0; i <= count; ++i) {
        double f = std::log10(static_cast<double>(lo)) +
                   (std::log10(static_cast<double>(hi)) - std::log10(static_cast<double>(lo))) * i / count;
        long k = static_cast<long>(std::llround(std::pow(10.0, f)));
        if (ks.empty() || ks.back() != k) ks.push_back(k);
    }
    return ks;
}

}  // namespace

TEST_CASE("errors_at: exact values and the Pythagorean split") {
    Optimum opt{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)};
    opt.x_star[0] = 2.0;

    SwarmState at_opt;
    at_opt.x = Eigen::MatrixXd::Constant(1, 2, 2.0);
    at_opt.theta = Eigen::MatrixXd::Zero(1, 2);
    auto e0 = errors_at(at_opt, opt);
    CHECK(e0.u1 == 0.0);
    CHECK(e0.v1 == 0.0);
    CHECK(e0.u2 == 0.0);
    CHECK(e0.v2 == 0.0);
    CHECK(e0.mse_x == 0.0);
    CHECK(e0.mse_theta == 0.0);

    // p = 1, n = 2, agents at x* + 1 and x* - 1
    SwarmState split;
    split.x.resize(1, 2);
    split.x << 3.0, 1.0;
    split.theta = Eigen::MatrixXd::Zero(1, 2);
    auto e1 = errors_at(split, opt);
    CHECK(e1.u1 == 0.0);
    CHECK(e1.v1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(e1.mse_x == doctest::Approx(1.0).epsilon(1e-15));

    // n * mse = V1 + n * U1 on random states
    RngStream rng(derive_key(5, {0}));
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.next_u64() % 7);
        int p = 1 + static_cast<int>(rng.next_u64() % 4);
        SwarmState s;
        s.x.resize(p, n);
        s.theta.resize(1, n);
        for (int i = 0; i < s.x.size(); ++i) s.x(i % p, i / p) = rng.uniform(-5, 5);
        for (int i = 0; i < n; ++i) s.theta(0, i) = rng.uniform(-5, 5);
        Optimum o{Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(1)};
        for (int i = 0; i < p; ++i) o.x_star[i] = rng.uniform(-2, 2);
        auto e = errors_at(s, o);
        double lhs = n * e.mse_x;
        double rhs = e.v1 + n * e.u1;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("average_traces") {
    auto t = synthetic({1, 2, 4}, [](double k) { return 1.0 / k; });
    auto same = average_traces({t});
    CHECK(same.u1 == t.u1);

    auto doubled = average_traces({t, t});
    CHECK(doubled.u1 == t.u1);
    CHECK(doubled.meta.paths == 2);

    auto zero = synthetic({1, 2, 4}, [](double) { return 0.0; });
    auto four = synthetic({1, 2, 4}, [](double) { return 4.0; });
    auto avg = average_traces({zero, four});
    CHECK(avg.v1[1] == doctest::Approx(2.0).epsilon(1e-15));

    auto other = synthetic({1, 3}, [](double k) { return k; });
    CHECK_THROWS_AS(average_traces({t, other}), std::invalid_argument);
    CHECK_THROWS_AS(average_traces({}), std::invalid_argument);
}

TEST_CASE("loglog_slope recovers exact power laws") {
    auto ks = log_ks(1, 100000, 200);
    auto inv_k = synthetic(ks, [](double k) { return 7.0 / k; });
    auto fit1 = loglog_slope(inv_k, Metric::u1, 1, 1e5);
    CHECK(fit1.slope == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fit1.r2 > 0.999999);
    CHECK(fit1.intercept == doctest::Approx(std::log10(7.0)).epsilon(1e-9));

    auto inv_k2 = synthetic(ks, [](double k) { return 3.0 / (k * k); });
    CHECK(loglog_slope(inv_k2, Metric::v1, 1, 1e5).slope == doctest::Approx(-2.0).epsilon(1e-9));

    // mixture: the 1/k term dominates in a late window
    auto mixed = synthetic(ks, [](double k) { return 1.0 / k + 1.0 / (k * k); });
    double s = loglog_slope(mixed, Metric::u1, 1000, 10000).slope;
    CHECK(s > -1.05);
    CHECK(s < -0.95);
}

TEST_CASE("loglog_slope window validation") {
    auto ks = log_ks(1, 1000, 30);
    auto t = synthetic(ks, [](double k) { return 1.0 / k; });
    CHECK_THROWS_AS(loglog_slope(t, Metric::u1, 900, 1000), std::invalid_argument);  // < 5 points

    auto with_zero = synthetic({10, 20, 30, 40, 50, 60}, [](double k) { return k == 30 ? 0.0 : 1.0 / k; });
    CHECK_THROWS_AS(loglog_slope(with_zero, Metric::u1, 10, 60), std::invalid_argument);
}

TEST_CASE("crossover") {
    std::vector<long> ks;
    for (long k = 1; k <= 10; ++k) ks.push_back(k);
    auto a = synthetic(ks, [](double k) { return 2.0 / (k * k); });
    auto b = synthetic(ks, [](double k) { return 1.0 / k; });

    auto k1 = crossover(a, b, Metric::u1, 1);
    REQUIRE(k1.has_value());
    CHECK(*k1 == 2);  // 2/k^2 <= 1/k iff k >= 2

    auto same = crossover(a, a, Metric::u1, 4);
    REQUIRE(same.has_value());
    CHECK(*same == 4);  // ties count

    CHECK_FALSE(crossover(b, a, Metric::u1, 3).has_value());  // b stays above for k >= 3

    auto mismatched = synthetic({1, 2}, [](double k) { return k; });
    CHECK_THROWS_AS(crossover(a, mismatched, Metric::u1, 1), std::invalid_argument);
}

TEST_CASE("crossover is stable under schedule refinement") {
    // true crossing of 4.5/k^2 vs 1/k at k = 4.5
    auto f_a = [](double k) { return 4.5 / (k * k); };
    auto f_b = [](double k) { return 1.0 / k; };
    std::vector<long> coarse{2, 4, 6, 8, 10}, fine{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto ca = synthetic(coarse, f_a), cb = synthetic(coarse, f_b);
    auto fa = synthetic(fine, f_a), fb = synthetic(fine, f_b);
    long k_coarse = *crossover(ca, cb, Metric::u1, 1);
    long k_fine = *crossover(fa, fb, Metric::u1, 1);
    CHECK(std::abs(k_coarse - k_fine) <= 2);  // one coarse-schedule gap
}

TEST_CASE("consensus onset index") {
    CHECK(consensus_onset(18, 0.0) == 36);
    CHECK(consensus_onset(1, 0.99) == 805);
    CHECK_THROWS_AS(consensus_onset(10, 1.0), std::invalid_argument);

    RngStream rng(derive_key(5, {1}));
    for (int trial = 0; trial < 100; ++trial) {
        long k = 1 + static_cast<long>(rng.next_u64() % 500);
        double rho = rng.uniform(0.0, 0.999);
        CHECK(consensus_onset(k, rho) >= 2 * k);
    }
}

TEST_CASE("transient scale") {
    CHECK(transient_scale(10, 0.5, 2.0) == doctest::Approx(2.0 * 10 / 0.25).epsilon(1e-15));
    CHECK(transient_scale(20, 0.5, 2.0) == doctest::Approx(2 * transient_scale(10, 0.5, 2.0)).epsilon(1e-15));
    CHECK(transient_scale(7, 0.0, 3.0) == doctest::Approx(21.0).epsilon(1e-15));
    CHECK_THROWS_AS(transient_scale(7, 1.0, 1.0), std::invalid_argument);

    // measured path-graph gaps: bound ratio for n = 16 vs n = 8 is about
    // 2 * 16 = 32 under the 1/n^2 gap scaling
    auto w8 = metropolis_weights(build_topology(TopologyKind::path, 8));
    auto w16 = metropolis_weights(build_topology(TopologyKind::path, 16));
    double ratio = transient_scale(16, w16.rho_w, 1.0) / transient_scale(8, w8.rho_w, 1.0);
    CHECK(ratio > 32.0 * 0.6);
    CHECK(ratio < 32.0 * 1.4);
}

TEST_CASE("metric names round-trip") {
    for (auto m : {Metric::u1, Metric::v1, Metric::u2, Metric::v2, Metric::mse_x, Metric::mse_theta})
        CHECK(metric_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(metric_from_string("bogus"), std::invalid_argument);
}
