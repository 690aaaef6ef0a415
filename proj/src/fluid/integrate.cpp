#include "pullsim/fluid/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pullsim/errors.hpp"

namespace pullsim::fluid {

namespace {

// Off-boundary drift treats the high-message P0 as exactly 0; the indicator
// branch of the public p0() only matters on the boundary itself, where the
// integrator runs in pinned mode instead.
enum class DriftMode { Free, Pinned };

double p0_raw(double s1, double s2, const FluidParams& params, DriftMode mode) {
    double lambda = params.lambda;
    if (auto* hm = std::get_if<HighMemory>(&params.regime)) {
        // Clamped to [0,1]: trial Runge-Kutta stages may push s_1 a hair
        // outside [0,1], which would otherwise leak P0 > 1.
        return std::clamp(1.0 - hm->mu * (1.0 - s1) / lambda, 0.0, 1.0);
    }
    if (std::get_if<HighMessage>(&params.regime)) {
        if (mode != DriftMode::Pinned) return 0.0;
        return std::clamp(1.0 - (1.0 - s2) / lambda, 0.0, 1.0);
    }
    const auto& cn = std::get<Constrained>(params.regime);
    double r = cn.mu * (1.0 - s1) / lambda;
    double sum = 1.0;
    for (std::uint64_t k = 0; k < cn.c; ++k) sum = 1.0 + r * sum;
    return std::clamp(1.0 / sum, 0.0, 1.0);
}

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order solution weights are row kA[6]; kE holds (b5 - b4) for the
// embedded error estimate.
constexpr double kE[7] = {71.0 / 57600, 0.0,           -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

class Integrator {
  public:
    Integrator(const FluidParams& params, double horizon)
        : p_(params), horizon_(horizon), dim_(params.truncation + 1) {
        for (auto& k : k_) k.assign(dim_, 0.0);
        ytmp_.assign(dim_, 0.0);
    }

    FluidSolution run(const OccupancyVector& initial);

  private:
    void drift(const std::vector<double>& y, DriftMode mode, std::vector<double>& f) const {
        double lambda = p_.lambda;
        double P0 = p0_raw(y[1], y[2], p_, mode);
        f[0] = 0.0;
        f[1] = lambda * (1.0 - P0) + lambda * (1.0 - y[1]) * P0 - (y[1] - y[2]);
        if (mode == DriftMode::Pinned) f[1] = 0.0; // sliding: s_1 held at 1
        for (std::size_t i = 2; i < dim_; ++i) {
            double next = i + 1 < dim_ ? y[i + 1] : 0.0;
            f[i] = lambda * (y[i - 1] - y[i]) * P0 - (y[i] - next);
        }
    }

    // One trial step of size h from y; fills y5 with the 5th-order result
    // and returns the scaled error norm (accept iff <= 1).
    double rk_step(const std::vector<double>& y, double h, DriftMode mode,
                   std::vector<double>& y5) {
        drift(y, mode, k_[0]);
        for (int stage = 1; stage < 7; ++stage) {
            for (std::size_t i = 0; i < dim_; ++i) {
                double acc = 0.0;
                for (int j = 0; j < stage; ++j) acc += kA[stage][j] * k_[j][i];
                ytmp_[i] = y[i] + h * acc;
            }
            if (stage < 6) {
                drift(ytmp_, mode, k_[stage]);
            } else {
                y5 = ytmp_; // stage 7 combination IS the 5th-order solution
                drift(y5, mode, k_[6]);
            }
        }
        double err_sq = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            double e = 0.0;
            for (int j = 0; j < 7; ++j) e += kE[j] * k_[j][i];
            e *= h;
            double scale = p_.abs_tol + p_.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err_sq += (e / scale) * (e / scale);
        }
        return std::sqrt(err_sq / static_cast<double>(dim_));
    }

    // Clamp to [0,1] and restore monotonicity by a running minimum; keeps
    // y[0] = 1 and, in pinned mode, y[1] = 1.
    static void project(std::vector<double>& y) {
        y[0] = 1.0;
        for (std::size_t i = 1; i < y.size(); ++i)
            y[i] = std::min(std::clamp(y[i], 0.0, 1.0), y[i - 1]);
    }

    void check_tail(const std::vector<double>& y, double t) const {
        if (y[dim_ - 1] > p_.tail_tol) {
            std::ostringstream msg;
            msg << "fluid tail overflow: s_" << (dim_ - 1) << " = " << y[dim_ - 1]
                << " exceeds " << p_.tail_tol << " at t = " << t
                << "; rerun with a larger truncation level";
            throw TailOverflowError(msg.str());
        }
    }

    // Smallest h' in (0, h] where `crossed` first flips to true, located by
    // bisection on trial steps from y.  Requires crossed(h) == true.
    template <class Crossed>
    double locate(const std::vector<double>& y, double h, DriftMode mode, Crossed crossed) {
        double lo = 0.0, hi = h;
        std::vector<double> trial(dim_);
        for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            rk_step(y, mid, mode, trial);
            if (crossed(trial)) hi = mid;
            else lo = mid;
        }
        return hi;
    }

    bool high_message() const { return std::holds_alternative<HighMessage>(p_.regime); }

    // Pin once s_1 is inside the boundary band, s_2 clears the hysteresis
    // threshold, and the free drift still pushes s_1 upward.
    bool should_pin(const std::vector<double>& y) const {
        if (!high_message()) return false;
        if (y[1] < 1.0 - p_.boundary_tol) return false;
        if (y[2] < 1.0 - p_.lambda + 2.0 * p_.boundary_tol) return false;
        return p_.lambda - (1.0 - y[2]) > 0.0; // free ds_1/dt at s_1 = 1
    }

    const FluidParams& p_;
    double horizon_;
    std::size_t dim_;
    std::array<std::vector<double>, 7> k_;
    std::vector<double> ytmp_;
};

FluidSolution Integrator::run(const OccupancyVector& initial) {
    FluidSolution sol;
    auto record = [&](double t, const std::vector<double>& y) {
        if (!sol.times.empty() && t <= sol.times.back() + 1e-15 * std::max(1.0, t)) {
            sol.states.back() = OccupancyVector(y);
            return;
        }
        sol.times.push_back(t);
        sol.states.emplace_back(y);
    };
    auto record_event = [&](BoundaryEvent::Kind kind, double t, const std::vector<double>& y) {
        record(t, y);
        sol.events.push_back({kind, t, sol.states.size() - 1});
    };

    // Initial state, padded or cut to the working truncation level.
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) y[i] = initial[i];
    for (std::size_t i = dim_; i <= initial.truncation_level(); ++i)
        if (initial[i] > p_.tail_tol)
            throw TailOverflowError("initial state carries mass beyond truncation level");
    project(y);
    check_tail(y, 0.0);

    DriftMode mode = DriftMode::Free;
    if (should_pin(y)) {
        y[1] = 1.0;
        mode = DriftMode::Pinned;
    }

    record(0.0, y);
    if (mode == DriftMode::Pinned) record_event(BoundaryEvent::Kind::Hit, 0.0, y);

    double t = 0.0;
    double h = std::min(p_.max_step, 0.01);
    std::uint64_t sample_idx = 1;
    const double release_threshold = 1.0 - p_.lambda + p_.boundary_tol;
    std::vector<double> ynew(dim_);

    while (t < horizon_) {
        // Never step past the horizon or the next output-grid time, so both
        // are hit exactly and no interpolation is needed for grid rows.
        double t_stop = horizon_;
        bool at_sample = false;
        if (p_.sample_dt > 0.0) {
            double ts = static_cast<double>(sample_idx) * p_.sample_dt;
            if (ts < t_stop) {
                t_stop = ts;
                at_sample = true;
            }
        }
        double h_try = std::min({h, p_.max_step, t_stop - t});

        double err = rk_step(y, h_try, mode, ynew);
        if (err > 1.0) {
            h = h_try * std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < 1e-14 * std::max(1.0, t))
                throw TailOverflowError("fluid integrator step size underflow");
            continue;
        }

        bool hit_stop = h_try >= t_stop - t - 1e-15 * std::max(1.0, t_stop);

        if (mode == DriftMode::Free && high_message() && should_pin(ynew)) {
            // Find where s_1 first enters the boundary band, land there,
            // snap it to 1 and switch to the sliding drift.
            double band = 1.0 - p_.boundary_tol;
            double h_star = h_try;
            if (y[1] < band) {
                h_star = locate(y, h_try, mode,
                                [&](const std::vector<double>& s) { return s[1] >= band; });
                rk_step(y, h_star, mode, ynew);
            }
            t += h_star;
            ynew[1] = 1.0;
            project(ynew);
            check_tail(ynew, t);
            y = ynew;
            mode = DriftMode::Pinned;
            record_event(BoundaryEvent::Kind::Hit, t, y);
            h = std::min(h, 0.01); // fresh dynamics after the mode switch
            continue;
        }

        if (mode == DriftMode::Pinned && ynew[2] <= release_threshold) {
            double h_star = locate(y, h_try, mode, [&](const std::vector<double>& s) {
                return s[2] <= release_threshold;
            });
            rk_step(y, h_star, mode, ynew);
            t += h_star;
            project(ynew);
            check_tail(ynew, t);
            y = ynew;
            mode = DriftMode::Free;
            record_event(BoundaryEvent::Kind::Release, t, y);
            h = std::min(h, 0.01);
            continue;
        }

        t = hit_stop ? t_stop : t + h_try;
        project(ynew);
        check_tail(ynew, t);
        y = ynew;

        if (hit_stop && at_sample) {
            record(t, y);
            ++sample_idx;
        } else if (hit_stop || p_.sample_dt <= 0.0) {
            record(t, y);
        }

        h = h_try * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    }

    record(horizon_, y);
    return sol;
}

} // namespace

OccupancyVector FluidSolution::at(double t) const {
    if (times.empty()) throw ValidationError("empty fluid solution");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - times.begin());
    std::size_t lo = hi - 1;
    double span = times[hi] - times[lo];
    double w = span > 0.0 ? (t - times[lo]) / span : 0.0;
    const auto& a = states[lo].levels();
    const auto& b = states[hi].levels();
    std::size_t k = std::max(a.size(), b.size());
    std::vector<double> mix(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) mix[i] = (1.0 - w) * states[lo][i] + w * states[hi][i];
    return OccupancyVector(std::move(mix));
}

FluidSolution integrate(const OccupancyVector& initial, const FluidParams& params,
                        double horizon) {
    params.validate();
    if (!(horizon >= 0.0)) throw ValidationError("horizon must be nonnegative");
    Integrator integ(params, horizon);
    return integ.run(initial);
}

} // namespace pullsim::fluid
