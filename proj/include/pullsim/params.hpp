#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace pullsim {

// Scaling rule for a quantity that depends on the system size n.  Only the
// closed forms needed by the three regimes are supported: a constant, a
// logarithmic law a*log(n), and a power law a*n^p.  Parsed from config
// strings like "5", "2*log(n)", "0.5*n^0.7", "n".
struct Schedule {
    enum class Kind { Constant, LogN, PowerN };
    Kind kind = Kind::Constant;
    double coeff = 0.0;    // the multiplier a (or the value itself for Constant)
    double exponent = 1.0; // p, PowerN only

    double eval(std::uint64_t n) const;
    // Rounded-to-nearest integer value, used for memory capacities.
    std::uint64_t eval_int(std::uint64_t n) const;
    std::string str() const;

    static Schedule constant(double v) { return {Kind::Constant, v, 1.0}; }
    static Schedule log_n(double a) { return {Kind::LogN, a, 1.0}; }
    static Schedule power_n(double a, double p) { return {Kind::PowerN, a, p}; }
    static Schedule parse(std::string_view text); // throws ConfigError

    bool operator==(const Schedule&) const = default;
};

// Dispatching policy and its asymptotic-regime parameters.  The first three
// are the token-based policy in its three operating regimes; the rest are
// the baselines it is compared against.
struct HighMemory {
    double mu; // constant per-idle-server message rate; memory grows with n
    bool operator==(const HighMemory&) const = default;
};
struct HighMessage {
    std::uint64_t c; // constant memory slots; message rate grows with n
    bool operator==(const HighMessage&) const = default;
};
struct Constrained {
    std::uint64_t c; // constant memory slots
    double mu;       // constant message rate
    bool operator==(const Constrained&) const = default;
};
struct RandomRouting {
    bool operator==(const RandomRouting&) const = default;
};
struct PowerOfD {
    std::uint64_t d; // number of queues sampled per arrival
    bool operator==(const PowerOfD&) const = default;
};
// Idle servers advertise themselves instantly and arrivals always find every
// currently idle server; the limit of the token policy as memory and message
// rate both grow without bound.
struct Pull {
    bool operator==(const Pull&) const = default;
};

using Regime =
    std::variant<HighMemory, HighMessage, Constrained, RandomRouting, PowerOfD, Pull>;

std::string regime_name(const Regime& r);
bool regime_uses_tokens(const Regime& r);

// Full description of a finite-n system.  memory_capacity and idle_rate give
// c(n) and mu(n); for the constant-parameter regimes these simply repeat the
// scalars carried by the regime tag.
struct SystemParams {
    std::uint64_t n = 1;
    double lambda = 0.5; // arrival rate per server, in (0,1)
    Regime regime = Constrained{1, 1.0};
    Schedule memory_capacity = Schedule::constant(0); // c(n) <= n
    Schedule idle_rate = Schedule::constant(0);       // mu(n) >= 0

    std::uint64_t c() const { return memory_capacity.eval_int(n); }
    double mu() const { return idle_rate.eval(n); }

    // Fills in the canonical schedules for a regime: HighMemory pairs its
    // constant mu with c(n) = 2*log(n); HighMessage pairs its constant c
    // with mu(n) = n; Constrained uses both constants; Pull gets c(n) = n
    // (every idle server is always visible).  Baselines carry no tokens.
    static SystemParams for_regime(std::uint64_t n, double lambda, Regime regime);
};

// Returns params unchanged iff every invariant holds; otherwise throws
// ValidationError naming the first violated constraint.
SystemParams validate_params(const SystemParams& params);

} // namespace pullsim
