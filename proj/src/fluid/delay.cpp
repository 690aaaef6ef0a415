#include "pullsim/fluid/delay.hpp"

#include <cmath>
#include <limits>

#include "pullsim/errors.hpp"

namespace pullsim::fluid {

double constrained_delay(double lambda, double alpha, std::uint64_t c) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("lambda out of range: must be in (0,1)");
    if (alpha < 0.0) throw ValidationError("alpha must be nonnegative");
    if (alpha == 0.0) return lambda / (1.0 - lambda); // no messages: plain M/M/1
    if (c < 1) throw ValidationError("memory size c must be at least 1");

    // denom = 1 - lambda + sum_{k=1}^{c} (alpha/lambda)^k, summed via Horner.
    double r = alpha / lambda;
    double geo = 0.0;
    for (std::uint64_t k = 0; k < c; ++k) {
        geo = r * (1.0 + geo);
        if (std::isinf(geo)) break; // r > 1 with huge c: delay underflows to 0
    }
    return lambda / (1.0 - lambda + geo);
}

double PhaseTransitionLimit::critical_delay(std::uint64_t c) const {
    return lambda / (1.0 - lambda + static_cast<double>(c));
}

double PhaseTransitionLimit::supercritical_bound(std::uint64_t c) const {
    return std::pow(lambda / alpha, static_cast<double>(c));
}

PhaseTransitionLimit phase_transition_limit(double lambda, double alpha) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("lambda out of range: must be in (0,1)");
    if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");

    PhaseTransitionLimit out;
    out.lambda = lambda;
    out.alpha = alpha;
    out.limit_alt_form = std::numeric_limits<double>::quiet_NaN();
    if (alpha < lambda) {
        out.kind = PhaseTransitionLimit::Kind::SubCritical;
        // Geometric tail sum_{k>=1} (alpha/lambda)^k = alpha/(lambda-alpha).
        out.limit = lambda * (lambda - alpha) / ((1.0 - lambda) * (lambda - alpha) + alpha);
        out.limit_alt_form =
            lambda * (lambda - alpha) / ((1.0 - lambda) * (lambda - alpha) + 1.0);
    } else if (alpha == lambda) {
        out.kind = PhaseTransitionLimit::Kind::Critical;
        out.limit = 0.0;
    } else {
        out.kind = PhaseTransitionLimit::Kind::SuperCritical;
        out.limit = 0.0;
    }
    return out;
}

double power_of_d_delay(double lambda, std::uint64_t d) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("lambda out of range: must be in (0,1)");
    if (d < 2) throw ValidationError("power-of-d delay formula requires d >= 2");

    // Exponents (d^i - d)/(d - 1) grow like d^(i-1); the first (i = 1) is 0,
    // so the "- 1" cancels it and the sum is effectively lambda^d + ...
    double sum = 0.0, comp = 0.0;
    double exponent = 0.0; // (d^i - d)/(d-1) for i = 1
    for (;;) {
        double term = std::pow(lambda, exponent);
        if (term < 1e-12) break;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        exponent = exponent * static_cast<double>(d) + static_cast<double>(d);
    }
    return sum - 1.0;
}

double delay_from_equilibrium(const OccupancyVector& s_star, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("lambda out of range: must be in (0,1)");
    return s_star.total_mass() / lambda - 1.0;
}

} // namespace pullsim::fluid
