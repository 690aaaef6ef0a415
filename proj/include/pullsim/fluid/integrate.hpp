#pragma once

#include <cstddef>
#include <vector>

#include "pullsim/fluid/model.hpp"
#include "pullsim/occupancy.hpp"

namespace pullsim::fluid {

// Times at which a high-message trajectory enters (Hit) or leaves (Release)
// the boundary s_1 = 1.  `row` indexes the matching entry of the solution
// grid, which always contains a row at the event time.
struct BoundaryEvent {
    enum class Kind { Hit, Release };
    Kind kind;
    double t;
    std::size_t row;
};

struct FluidSolution {
    std::vector<double> times;
    std::vector<OccupancyVector> states;
    std::vector<BoundaryEvent> events;

    const OccupancyVector& final_state() const { return states.back(); }
    double final_time() const { return times.back(); }
    // State at an arbitrary time, linearly interpolated between grid rows
    // (exact at grid times; clamped outside the integrated range).
    OccupancyVector at(double t) const;
};

// Integrates ds/dt = F(s) from `initial` over [0, horizon] with a
// Dormand-Prince 5(4) adaptive step, projecting each accepted state back
// onto the occupancy cone (clamp to [0,1], running-minimum re-monotonize).
//
// High-message trajectories can reach the set {s_1 = 1, s_2 > 1-lambda}
// where the drift is discontinuous.  There the integrator switches to the
// sliding drift: ds_1/dt = 0 with P_0 = 1 - (1-s_2)/lambda, which is the
// unique value keeping the state on the boundary.  The boundary is released
// when s_2 decays to 1-lambda (within the hysteresis band boundary_tol).
// Both transitions are located by bisection inside the offending step and
// recorded as BoundaryEvents.
//
// Throws TailOverflowError if the last tracked coordinate s_K exceeds
// params.tail_tol, meaning truncation K is too small for this trajectory.
FluidSolution integrate(const OccupancyVector& initial, const FluidParams& params,
                        double horizon);

} // namespace pullsim::fluid
