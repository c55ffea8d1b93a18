#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdsa/problem.hpp"

namespace cdsa {

// Unbiasedness measurement of one oracle at one probe point.
struct OracleCheck {
    double gap;         // |empirical mean - exact gradient|
    double std_error;   // standard error of that mean, sqrt(tr(Cov) / draws)
    double variance;    // tr(Cov), the empirical per-draw variance
    double grad_norm2;  // |exact gradient|^2 at the probe point
    bool flagged;       // gap > 4 std errors
};

struct ValidationPoint {
    int agent;
    OracleCheck comp;
    OracleCheck learn;
};

// Fitted variance-bound constants from regressing the empirical per-draw
// variance on |grad|^2 across the probe points: variance ~ sigma2 + M |grad|^2.
struct VarianceFit {
    double sigma2;
    double m;
};

struct ValidationReport {
    std::vector<ValidationPoint> points;
    VarianceFit comp_fit;
    VarianceFit learn_fit;
    bool any_flagged;
};

// Monte Carlo check of the oracle moment contract: at `point_count` random
// (x, theta) probes, the empirical oracle mean must match the exact gradient
// within 4 standard errors, and the variances must admit finite (sigma2, M).
ValidationReport validate_assumptions(const CoupledProblem& problem, int point_count,
                                      int draws_per_point, std::uint64_t seed);

std::string format_report(const ValidationReport& report);

}  // namespace cdsa
