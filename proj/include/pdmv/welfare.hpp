#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "equilibrium_pd.hpp"
#include "equilibrium_vanilla.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "volterra.hpp"

namespace pdmv {

// Coefficients of the suboptimal (vanilla-strategy-in-PD-world) system, with
// the vanilla H frozen inside the convolution forcings. Indexed by tau.
struct SuboptimalCoefficients {
    TimeGrid grid;
    std::vector<double> Bbar, Hbar, Cbar, Mbar;
    std::vector<double> B, C;
    std::vector<double> D, N;
};

struct WelfareResult {
    double loss{};         // certainty-equivalent fraction of initial wealth
    double component_B{};  // v0 * int (B - B_sub)
    double component_C{};  // lambda* * int (C - C_sub)
    double component_D{};  // D(0) - D_sub(0)
};

inline std::array<double, 2> sub_rhs_bh(const MarketParams& m, double tau, double B,
                                        double H) {
    const double g = m.gamma;
    const double Hh = vanilla_H(m, tau);
    const double srg = m.sigma * m.rho;
    const double forcing = m.theta - g * srg * Hh;
    return {-m.kappa * B - g * m.sigma * m.sigma / 2.0 * H * H - srg * forcing * H +
                (m.theta * m.theta - g * g * srg * srg * Hh * Hh) / (2.0 * g),
            -m.kappa * H + m.theta * forcing / g};
}

inline std::array<double, 2> sub_rhs_cm(const MarketParams& m, const ClaimParams& cl,
                                        const HawkesParams& h, double tau, double C,
                                        double M) {
    const double g = m.gamma;
    const double A = std::exp(m.upsilon * tau);
    const double e = std::exp(-cl.mu * cl.theta_tilde / (g * A));
    return {(h.a1 + 1.0) * C + g * A * (1.0 - e) / cl.mu * M - g / 2.0 * M * M -
                A / cl.mu + g * A * A / (cl.mu * cl.mu) * (e - 1.0),
            (h.a1 + 1.0) * M - cl.theta_tilde * A / cl.mu * e - A / cl.mu};
}

inline SuboptimalCoefficients solve_suboptimal(const MarketParams& m, const ClaimParams& cl,
                                               const HawkesParams& h, const TimeGrid& grid) {
    m.validate();
    cl.validate();
    h.validate();
    const std::size_t N = grid.steps;
    const double dt = grid.dt();

    SuboptimalCoefficients out{grid, {}, {}, {}, {}, {}, {}, {}, {}};
    {
        VolterraProblem prob;
        prob.kernel = m.fractional_kernel();
        prob.dimension = 2;
        prob.rhs = [m](double tau, std::span<const double> x, std::span<double> f) {
            const auto v = sub_rhs_bh(m, tau, x[0], x[1]);
            f[0] = v[0];
            f[1] = v[1];
        };
        GridSolution s = solve_volterra(prob, grid);
        out.Bbar = std::move(s.values[0]);
        out.Hbar = std::move(s.values[1]);
    }
    {
        VolterraProblem prob;
        prob.kernel = h.kernel;
        prob.dimension = 2;
        prob.rhs = [m, cl, h](double tau, std::span<const double> x, std::span<double> f) {
            const auto v = sub_rhs_cm(m, cl, h, tau, x[0], x[1]);
            f[0] = v[0];
            f[1] = v[1];
        };
        GridSolution s = solve_volterra(prob, grid);
        out.Cbar = std::move(s.values[0]);
        out.Mbar = std::move(s.values[1]);
    }

    out.B.resize(N + 1);
    out.C.resize(N + 1);
    std::vector<double> dD(N + 1), dN(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        const double tau = grid.time(k);
        out.B[k] = sub_rhs_bh(m, tau, out.Bbar[k], out.Hbar[k])[0];
        out.C[k] = sub_rhs_cm(m, cl, h, tau, out.Cbar[k], out.Mbar[k])[0];
        dD[k] = m.kappa * m.phi * out.Bbar[k] + h.a0 * out.Cbar[k];
        dN[k] = m.kappa * m.phi * out.Hbar[k] + h.a0 * out.Mbar[k];
    }
    out.D = cumulative_trapezoid(dD, dt);
    out.N = cumulative_trapezoid(dN, dt);
    return out;
}

inline WelfareResult welfare_loss(const PDCoefficients& opt, const SuboptimalCoefficients& sub,
                                  const MarketParams& m, double lambda_star) {
    const double dt = opt.grid.dt();
    const std::size_t n = opt.B.size();
    std::vector<double> dB(n), dC(n);
    for (std::size_t k = 0; k < n; ++k) {
        dB[k] = opt.B[k] - sub.B[k];
        dC[k] = opt.C[k] - sub.C[k];
    }
    WelfareResult r;
    r.component_B = m.v0 * trapezoid(dB, dt);
    r.component_C = lambda_star * trapezoid(dC, dt);
    r.component_D = opt.D.back() - sub.D.back();
    r.loss = (r.component_B + r.component_C + r.component_D) /
             (std::exp(m.upsilon * opt.grid.horizon) * m.x0);
    return r;
}

inline WelfareResult welfare_loss(const MarketParams& m, const ClaimParams& cl,
                                  const HawkesParams& h, const TimeGrid& grid) {
    const PDCoefficients opt = solve_pd(m, cl, h, grid);
    const SuboptimalCoefficients sub = solve_suboptimal(m, cl, h, grid);
    return welfare_loss(opt, sub, m, h.lambda_star);
}

}  // namespace pdmv
