#pragma once

#include <cstdint>

#include "pullsim/occupancy.hpp"

namespace pullsim::fluid {

// Asymptotic mean waiting time of the token policy in the constrained
// regime when the per-idle-server message rate is budgeted as
// mu = alpha/(1-lambda), i.e. alpha messages per served job:
//
//   E[W] = lambda / (1 - lambda + sum_{k=1}^{c} (alpha/lambda)^k)
//
// alpha = 0 is the degenerate no-token case and returns the M/M/1 waiting
// time lambda/(1-lambda).
double constrained_delay(double lambda, double alpha, std::uint64_t c);

// Behavior of constrained_delay as the memory size c grows, classified by
// the message budget alpha against the load lambda.
struct PhaseTransitionLimit {
    enum class Kind {
        SubCritical,  // alpha < lambda: delay converges to a positive limit
        Critical,     // alpha = lambda: delay = lambda/(1-lambda+c), decays like 1/c
        SuperCritical // alpha > lambda: delay <= (lambda/alpha)^c, exponential decay
    };
    Kind kind{};
    double lambda = 0.0;
    double alpha = 0.0;
    // c -> infinity limit of the delay; positive only in the sub-critical case.
    double limit = 0.0;
    // Alternative algebraic simplification of the sub-critical limit,
    // lambda(lambda-alpha)/((1-lambda)(lambda-alpha)+1), which disagrees with
    // the series limit above; both are reported so they can be compared.
    // NaN outside the sub-critical case.
    double limit_alt_form = 0.0;

    // Exact delay at finite c in the critical case: lambda/(1-lambda+c).
    double critical_delay(std::uint64_t c) const;
    // Upper bound (lambda/alpha)^c in the super-critical case.
    double supercritical_bound(std::uint64_t c) const;
};

PhaseTransitionLimit phase_transition_limit(double lambda, double alpha);

// Asymptotic mean waiting time under power-of-d sampling (d >= 2):
//   sum_{i>=1} lambda^((d^i - d)/(d - 1)) - 1
// summed until a term falls below 1e-12; always >= lambda^d.
double power_of_d_delay(double lambda, std::uint64_t d);

// Mean waiting time implied by an equilibrium occupancy via Little's law:
// (1/lambda) * sum_{i>=1} s_i  -  1.
double delay_from_equilibrium(const OccupancyVector& s_star, double lambda);

} // namespace pullsim::fluid
