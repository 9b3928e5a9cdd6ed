#pragma once

#include "equilibrium_pd.hpp"
#include "equilibrium_vanilla.hpp"
#include "mc_sim.hpp"

namespace pdmv {

// Coefficient solutions are indexed by time-to-maturity; strategy series for
// simulation run in calendar time, so index k maps to tau = T - t_k.

inline StrategySeries vanilla_strategy_series(const VanillaCoefficients& c,
                                              const MarketParams& m, const ClaimParams& cl) {
    const std::size_t N = c.grid.steps;
    StrategySeries s;
    s.weight.resize(N + 1);
    s.deductible.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        const std::size_t r = N - k;
        const double tau = c.grid.time(r);
        s.weight[k] = vanilla_trading_weight(m, c.H[r], tau);
        s.deductible[k] = vanilla_deductible(m, cl, tau);
    }
    return s;
}

inline StrategySeries pd_strategy_series(const PDCoefficients& c, const MarketParams& m,
                                         const ClaimParams& cl) {
    const std::size_t N = c.grid.steps;
    StrategySeries s;
    s.weight.resize(N + 1);
    s.deductible.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        const std::size_t r = N - k;
        const double tau = c.grid.time(r);
        s.weight[k] = pd_trading_weight(m, c.Hbar[r], tau);
        s.deductible[k] = pd_deductible(m, cl, c.Mbar[r], tau);
    }
    return s;
}

}  // namespace pdmv
