#include "cdsa/stepsize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cdsa {

StepsizePolicy StepsizePolicy::harmonic(double beta, long offset, double mu_x, double mu_theta) {
    if (!(beta > 2.0)) throw std::invalid_argument("harmonic stepsize policy requires beta > 2");
    if (offset < 1) throw std::invalid_argument("harmonic stepsize policy requires offset K >= 1");
    if (!(mu_x > 0.0) || !(mu_theta > 0.0))
        throw std::invalid_argument("harmonic stepsize policy requires positive mu_x, mu_theta");
    return StepsizePolicy(Harmonic{beta, offset, mu_x, mu_theta});
}

StepsizePolicy StepsizePolicy::explicit_schedule(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("explicit stepsize policy requires a > 0 and b > 0");
    return StepsizePolicy(Explicit{a, b});
}

std::pair<double, double> StepsizePolicy::at(long k) const {
    if (k < 0) throw std::invalid_argument("stepsize index must be >= 0");
    if (const auto* h = std::get_if<Harmonic>(&form_)) {
        double denom = static_cast<double>(k + h->offset);
        return {h->beta / (h->mu_x * denom), h->beta / (h->mu_theta * denom)};
    }
    const auto& e = std::get<Explicit>(form_);
    double s = e.a / (static_cast<double>(k) + e.b);
    return {s, s};
}

std::string StepsizePolicy::describe() const {
    std::ostringstream os;
    if (const auto* h = std::get_if<Harmonic>(&form_)) {
        os << "harmonic beta=" << h->beta << " K=" << h->offset << " mu_x=" << h->mu_x
           << " mu_theta=" << h->mu_theta;
    } else {
        const auto& e = std::get<Explicit>(form_);
        os << "explicit a=" << e.a << " b=" << e.b;
    }
    return os.str();
}

long stepsize_offset(double beta, double m_x, double l_x, double mu_x, double m_theta,
                     double l_theta, double mu_theta) {
    if (!(beta > 0.0) || !(l_x > 0.0) || !(mu_x > 0.0) || !(l_theta > 0.0) || !(mu_theta > 0.0))
        throw std::invalid_argument("stepsize_offset requires positive beta, L and mu constants");
    if (m_x < 0.0 || m_theta < 0.0)
        throw std::invalid_argument("stepsize_offset requires nonnegative variance constants");
    double branch_x = 3.0 * beta * (1.0 + m_x) * l_x * l_x / (mu_x * mu_x);
    double branch_theta = 3.0 * beta * (1.0 + m_theta) * l_theta * l_theta / (mu_theta * mu_theta);
    return static_cast<long>(std::ceil(std::max(branch_x, branch_theta)));
}

}  // namespace cdsa
