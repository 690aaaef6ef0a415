#pragma once

#include <stdexcept>
#include <string>

namespace pullsim {

// Raised by validate_params and constructors when a parameter violates its
// documented range.  The message names the first offending field.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Raised by steady-state estimation when fewer jobs completed than the
// minimum required for a trustworthy confidence interval.
struct UndersampledError : std::runtime_error {
    explicit UndersampledError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the fluid integrator when mass reaches the last tracked
// coordinate, i.e. the truncation level K was chosen too small.
struct TailOverflowError : std::runtime_error {
    explicit TailOverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by config parsing: unknown section/key, malformed value, or a
// required section missing for the requested subcommand.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pullsim
