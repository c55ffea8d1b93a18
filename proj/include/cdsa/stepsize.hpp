#pragma once

#include <string>
#include <utility>
#include <variant>

namespace cdsa {

// Diminishing step-size schedule for the two coupled updates. Two forms:
//
//   harmonic:  alpha_k = beta / (mu_x (k + K)),  gamma_k = beta / (mu_theta (k + K))
//   explicit:  alpha_k = gamma_k = a / (k + b)
//
// The harmonic form requires beta > 2; construction rejects anything else.
class StepsizePolicy {
public:
    struct Harmonic {
        double beta;
        long offset;  // K
        double mu_x;
        double mu_theta;
    };
    struct Explicit {
        double a;
        double b;
    };

    static StepsizePolicy harmonic(double beta, long offset, double mu_x, double mu_theta);
    static StepsizePolicy explicit_schedule(double a, double b);

    // (alpha_k, gamma_k) for k >= 0.
    std::pair<double, double> at(long k) const;

    std::string describe() const;

private:
    explicit StepsizePolicy(std::variant<Harmonic, Explicit> form) : form_(std::move(form)) {}
    std::variant<Harmonic, Explicit> form_;
};

// Schedule offset K = ceil(max{3 beta (1+M_x) L_x^2 / mu_x^2,
//                              3 beta (1+M_theta) L_theta^2 / mu_theta^2}).
// beta, L and mu arguments must be positive; M arguments must be >= 0.
long stepsize_offset(double beta, double m_x, double l_x, double mu_x, double m_theta,
                     double l_theta, double mu_theta);

}  // namespace cdsa
