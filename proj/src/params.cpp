#include "pullsim/params.hpp"

#include <cmath>
#include <charconv>
#include <sstream>

#include "pullsim/errors.hpp"

namespace pullsim {

double Schedule::eval(std::uint64_t n) const {
    switch (kind) {
        case Kind::Constant: return coeff;
        case Kind::LogN: return coeff * std::log(static_cast<double>(n));
        case Kind::PowerN: return coeff * std::pow(static_cast<double>(n), exponent);
    }
    return 0.0;
}

std::uint64_t Schedule::eval_int(std::uint64_t n) const {
    double v = eval(n);
    return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
}

std::string Schedule::str() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Constant: out << coeff; break;
        case Kind::LogN: out << coeff << "*log(n)"; break;
        case Kind::PowerN:
            if (coeff == 1.0 && exponent == 1.0) out << "n";
            else out << coeff << "*n^" << exponent;
            break;
    }
    return out.str();
}

namespace {

double parse_number(std::string_view text, std::string_view whole) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("bad schedule expression: '" + std::string(whole) + "'");
    return value;
}

} // namespace

Schedule Schedule::parse(std::string_view text) {
    std::string cleaned;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) cleaned.push_back(ch);
    if (cleaned.empty()) throw ConfigError("empty schedule expression");

    double a = 1.0;
    std::string_view rest = cleaned;
    if (auto star = rest.find('*'); star != std::string_view::npos) {
        a = parse_number(rest.substr(0, star), text);
        rest = rest.substr(star + 1);
    }
    if (rest == "log(n)") return log_n(a);
    if (rest == "n") return power_n(a, 1.0);
    if (rest.rfind("n^", 0) == 0) return power_n(a, parse_number(rest.substr(2), text));
    // No recognized n-term: the whole string must be a plain number.
    if (rest.size() != cleaned.size())
        throw ConfigError("bad schedule expression: '" + std::string(text) + "'");
    return constant(parse_number(rest, text));
}

std::string regime_name(const Regime& r) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HighMemory>) return "high-memory";
            else if constexpr (std::is_same_v<T, HighMessage>) return "high-message";
            else if constexpr (std::is_same_v<T, Constrained>) return "constrained";
            else if constexpr (std::is_same_v<T, RandomRouting>) return "random";
            else if constexpr (std::is_same_v<T, PowerOfD>) return "power-of-d";
            else return "pull";
        },
        r);
}

bool regime_uses_tokens(const Regime& r) {
    return std::holds_alternative<HighMemory>(r) || std::holds_alternative<HighMessage>(r) ||
           std::holds_alternative<Constrained>(r) || std::holds_alternative<Pull>(r);
}

SystemParams SystemParams::for_regime(std::uint64_t n, double lambda, Regime regime) {
    SystemParams p;
    p.n = n;
    p.lambda = lambda;
    p.regime = regime;
    if (auto* hm = std::get_if<HighMemory>(&regime)) {
        p.memory_capacity = Schedule::log_n(2.0);
        p.idle_rate = Schedule::constant(hm->mu);
    } else if (auto* hs = std::get_if<HighMessage>(&regime)) {
        p.memory_capacity = Schedule::constant(static_cast<double>(hs->c));
        p.idle_rate = Schedule::power_n(1.0, 1.0);
    } else if (auto* cn = std::get_if<Constrained>(&regime)) {
        p.memory_capacity = Schedule::constant(static_cast<double>(cn->c));
        p.idle_rate = Schedule::constant(cn->mu);
    } else if (std::holds_alternative<Pull>(regime)) {
        p.memory_capacity = Schedule::power_n(1.0, 1.0); // c(n) = n
        p.idle_rate = Schedule::constant(0.0);           // tokens appear instantly
    } else {
        p.memory_capacity = Schedule::constant(0.0);
        p.idle_rate = Schedule::constant(0.0);
    }
    return p;
}

SystemParams validate_params(const SystemParams& params) {
    std::ostringstream msg;
    if (params.n < 1) throw ValidationError("server count must be positive");
    if (!(params.lambda > 0.0 && params.lambda < 1.0)) {
        msg << "lambda out of range: " << params.lambda << " not in (0,1)";
        throw ValidationError(msg.str());
    }
    if (auto* hm = std::get_if<HighMemory>(&params.regime)) {
        if (!(hm->mu > 0.0)) throw ValidationError("high-memory regime requires mu > 0");
    } else if (auto* hs = std::get_if<HighMessage>(&params.regime)) {
        if (hs->c < 1) throw ValidationError("high-message regime requires c >= 1");
    } else if (auto* cn = std::get_if<Constrained>(&params.regime)) {
        if (cn->c < 1) throw ValidationError("constrained regime requires c >= 1");
        if (!(cn->mu > 0.0)) throw ValidationError("constrained regime requires mu > 0");
    } else if (auto* pd = std::get_if<PowerOfD>(&params.regime)) {
        if (pd->d < 1) throw ValidationError("power-of-d requires d >= 1");
    }
    if (params.c() > params.n) {
        msg << "memory exceeds n: c(" << params.n << ")=" << params.c()
            << " > n=" << params.n;
        throw ValidationError(msg.str());
    }
    if (params.mu() < 0.0) throw ValidationError("idle message rate must be nonnegative");
    if (regime_uses_tokens(params.regime) && !std::holds_alternative<Pull>(params.regime)) {
        if (params.c() < 1)
            throw ValidationError("token regimes need memory capacity c(n) >= 1");
        if (!(params.mu() > 0.0))
            throw ValidationError("token regimes need idle message rate mu(n) > 0");
    }
    return params;
}

} // namespace pullsim
