#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "pullsim/occupancy.hpp"
#include "pullsim/params.hpp"

namespace pullsim::fluid {

// The deterministic large-n limit only exists for the token-based regimes;
// the routing baselines have their own closed forms in delay.hpp.
using FluidRegime = std::variant<HighMemory, HighMessage, Constrained>;

struct FluidParams {
    double lambda = 0.5;
    FluidRegime regime = Constrained{1, 1.0};
    std::size_t truncation = OccupancyVector::kDefaultTruncation; // K

    // Integrator settings.
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.5;
    double sample_dt = 0.05;      // output grid spacing; 0 records every accepted step
    double boundary_tol = 1e-9;   // band around s_1 = 1 for event detection
    double tail_tol = OccupancyVector::kTailTolerance; // overflow monitor on s_K

    // Throws ValidationError on out-of-range lambda or regime scalars.
    void validate() const;
};

// Probability that an arriving job finds no token in dispatcher memory, as a
// function of the current state:
//   high-memory:  [1 - mu(1-s_1)/lambda]^+
//   high-message: [1 - (1-s_2)/lambda]^+ restricted to the boundary s_1 = 1
//                 (tested up to boundary_tol)
//   constrained:  [ sum_{k=0}^{c} (mu(1-s_1)/lambda)^k ]^{-1}, with 0^0 = 1
//                 so s_1 = 1 gives exactly 1
double p0(const OccupancyVector& s, const FluidParams& params);

// Right-hand side of ds/dt = F(s):
//   F_0 = 0
//   F_1 = lambda(1-P_0) + lambda(1-s_1)P_0 - (s_1 - s_2)
//   F_i = lambda(s_{i-1} - s_i)P_0 - (s_i - s_{i+1}),  2 <= i <= K
// with the truncation closure s_{K+1} = 0.
std::vector<double> fluid_drift(const OccupancyVector& s, const FluidParams& params);

// Unique fixed point of the drift and the delay it implies.
struct Equilibrium {
    double p0_star = 0.0;        // token-miss probability in equilibrium
    OccupancyVector s_star;      // geometric: s_i* = lambda * (lambda*p0_star)^(i-1)
    double delay = 0.0;          // lambda*p0_star / (1 - lambda*p0_star)
};

// Closed-form equilibrium: P0* is p0 evaluated at s_1 = lambda (and, for the
// high-message regime, off the boundary, hence 0).  The stored s_star is
// truncated where the geometric tail falls below 1e-16, or at
// params.truncation if that is longer, so that drift and mass evaluations on
// it are accurate to ~1e-13.
Equilibrium equilibrium(const FluidParams& params);

} // namespace pullsim::fluid
