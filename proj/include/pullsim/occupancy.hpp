#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pullsim {

// Occupancy state of a many-server system: values[i] is the fraction of
// queues holding at least i jobs, so values[0] == 1 and the sequence is
// nonincreasing.  Used both for empirical states S^n and fluid states s.
//
// The mathematical object is an infinite sequence; we keep only the first
// K+1 coordinates and treat everything beyond as zero.  Callers that
// integrate dynamics monitor the tail coordinate against kTailTolerance to
// make sure the cut stays honest.
class OccupancyVector {
  public:
    static constexpr std::size_t kDefaultTruncation = 64;
    static constexpr double kTailTolerance = 1e-9;
    // ODE steps and float roundoff produce harmless epsilon violations of
    // monotonicity; anything up to this slack is clamped, larger is rejected.
    static constexpr double kMonotoneSlack = 1e-12;

    // Empty system: s = (1).
    OccupancyVector() : values_{1.0} {}

    // Validating constructor; `levels` is the full sequence including the
    // leading s_0 = 1.  Throws ValidationError on out-of-range entries or
    // monotonicity violations beyond kMonotoneSlack.
    explicit OccupancyVector(std::vector<double> levels);

    // (1, 0, 0, ..., 0) with truncation level k.
    static OccupancyVector zeros(std::size_t k);

    // s_i, with i past the truncation level reading as 0.
    double operator[](std::size_t i) const {
        return i < values_.size() ? values_[i] : 0.0;
    }

    std::size_t truncation_level() const { return values_.size() - 1; }
    const std::vector<double>& levels() const { return values_; }

    // Σ_{i≥1} s_i: mean number of jobs per queue.
    double total_mass() const { return total_mass_from(1); }
    // Partial tail sum Σ_{i≥start} s_i; nonincreasing in start.
    double total_mass_from(std::size_t start) const;

    bool operator==(const OccupancyVector& o) const = default;

  private:
    std::vector<double> values_;
};

// Weight assignment for the weighted l2 distance below.  There are no
// tunable fields: the weight of coordinate i is fixed at 2^-i, which is
// what makes bounded sets of occupancy states behave like a compact metric
// space.  The type exists so signatures say which norm they mean.
struct WeightedNormConfig {
    static double weight(std::size_t i) { return std::ldexp(1.0, -static_cast<int>(i)); }
};

// sqrt( Σ_{i≥0} |x_i − y_i|^2 / 2^i ), padding the shorter vector with
// zeros.  Invariant under common zero-padding.
double weighted_norm(const OccupancyVector& x, const OccupancyVector& y,
                     WeightedNormConfig cfg = {});

} // namespace pullsim
