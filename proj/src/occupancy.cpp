#include "pullsim/occupancy.hpp"

#include <string>

#include "pullsim/errors.hpp"

namespace pullsim {

OccupancyVector::OccupancyVector(std::vector<double> levels) : values_(std::move(levels)) {
    if (values_.empty() || values_[0] != 1.0)
        throw ValidationError("occupancy vector must start with s_0 = 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double v = values_[i];
        if (!(v >= -kMonotoneSlack && v <= 1.0 + kMonotoneSlack))
            throw ValidationError("occupancy entry s_" + std::to_string(i) + " = " +
                                  std::to_string(v) + " outside [0,1]");
        values_[i] = std::min(1.0, std::max(0.0, v));
        if (i > 0) {
            if (values_[i] > values_[i - 1] + kMonotoneSlack)
                throw ValidationError("occupancy not nonincreasing at index " +
                                      std::to_string(i));
            values_[i] = std::min(values_[i], values_[i - 1]);
        }
    }
}

OccupancyVector OccupancyVector::zeros(std::size_t k) {
    OccupancyVector s;
    s.values_.assign(k + 1, 0.0);
    s.values_[0] = 1.0;
    return s;
}

double OccupancyVector::total_mass_from(std::size_t start) const {
    // Kahan summation: downstream consistency checks compare against
    // closed forms at 1e-12, tighter than naive summation guarantees.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < values_.size(); ++i) {
        double y = values_[i] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double weighted_norm(const OccupancyVector& x, const OccupancyVector& y,
                     WeightedNormConfig cfg) {
    std::size_t k = std::max(x.truncation_level(), y.truncation_level());
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
        double d = x[i] - y[i];
        double term = d * d * cfg.weight(i);
        double yk = term - comp;
        double t = sum + yk;
        comp = (t - sum) - yk;
        sum = t;
    }
    return std::sqrt(sum);
}

} // namespace pullsim
