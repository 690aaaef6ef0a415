#include "pullsim/fluid/model.hpp"

#include <algorithm>
#include <cmath>

#include "pullsim/errors.hpp"

namespace pullsim::fluid {

void FluidParams::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("lambda out of range: must be in (0,1)");
    if (auto* hm = std::get_if<HighMemory>(&regime)) {
        if (!(hm->mu > 0.0)) throw ValidationError("high-memory regime requires mu > 0");
    } else if (auto* hs = std::get_if<HighMessage>(&regime)) {
        if (hs->c < 1) throw ValidationError("high-message regime requires c >= 1");
    } else if (auto* cn = std::get_if<Constrained>(&regime)) {
        if (cn->c < 1) throw ValidationError("constrained regime requires c >= 1");
        if (!(cn->mu > 0.0)) throw ValidationError("constrained regime requires mu > 0");
    }
    if (truncation < 2) throw ValidationError("truncation level must be at least 2");
}

namespace {

// Shared by p0() and equilibrium(): the same expression evaluated at
// s_1 = lambda is the equilibrium P0*, so computing both through one code
// path keeps them bitwise consistent.
double p0_at(double s1, double s2, const FluidParams& params, bool on_boundary) {
    double lambda = params.lambda;
    if (auto* hm = std::get_if<HighMemory>(&params.regime)) {
        return std::max(0.0, 1.0 - hm->mu * (1.0 - s1) / lambda);
    }
    if (std::get_if<HighMessage>(&params.regime)) {
        if (!on_boundary) return 0.0;
        return std::max(0.0, 1.0 - (1.0 - s2) / lambda);
    }
    const auto& cn = std::get<Constrained>(params.regime);
    double r = cn.mu * (1.0 - s1) / lambda;
    // sum_{k=0}^{c} r^k with 0^0 = 1; Horner keeps c ~ 10^4 draws exact-ish.
    double sum = 1.0;
    for (std::uint64_t k = 0; k < cn.c; ++k) sum = 1.0 + r * sum;
    return 1.0 / sum;
}

} // namespace

double p0(const OccupancyVector& s, const FluidParams& params) {
    bool on_boundary = s[1] >= 1.0 - params.boundary_tol;
    return p0_at(s[1], s[2], params, on_boundary);
}

std::vector<double> fluid_drift(const OccupancyVector& s, const FluidParams& params) {
    std::size_t k = s.truncation_level();
    std::vector<double> f(k + 1, 0.0);
    double lambda = params.lambda;
    double P0 = p0(s, params);
    if (k >= 1) f[1] = lambda * (1.0 - P0) + lambda * (1.0 - s[1]) * P0 - (s[1] - s[2]);
    for (std::size_t i = 2; i <= k; ++i)
        f[i] = lambda * (s[i - 1] - s[i]) * P0 - (s[i] - s[i + 1]);
    return f;
}

Equilibrium equilibrium(const FluidParams& params) {
    params.validate();
    double lambda = params.lambda;
    // In equilibrium s_1 = lambda < 1, so the high-message indicator is off.
    double p0_star = p0_at(lambda, 0.0, params, false);

    Equilibrium eq;
    eq.p0_star = p0_star;
    double rho = lambda * p0_star; // geometric ratio of the equilibrium tail
    eq.delay = rho / (1.0 - rho);

    std::vector<double> levels{1.0, lambda};
    double term = lambda;
    constexpr std::size_t kMaxLevels = 65536;
    while (levels.size() < kMaxLevels) {
        term *= rho;
        bool below_user_cut = levels.size() <= params.truncation;
        if (term < 1e-16 && !below_user_cut) break;
        if (term < 1e-16 && below_user_cut) {
            levels.resize(params.truncation + 1, 0.0);
            break;
        }
        levels.push_back(term);
    }
    eq.s_star = OccupancyVector(std::move(levels));
    return eq;
}

} // namespace pullsim::fluid
