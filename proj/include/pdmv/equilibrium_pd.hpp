#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "volterra.hpp"

namespace pdmv {

// Truncated moments of an exponential(mu) claim above a deductible d >= 0:
//   survivor  Fbar = e^{-mu d}
//   indemnity EI   = E[(Y-d)^+]        = e^{-mu d}/mu
//   M1             = E[min(Y,d)]       = 1/mu - e^{-mu d}(d + 1/mu)
//   M2             = E[min(Y,d)^2]     = 2/mu^2 - e^{-mu d}(d^2 + 2d/mu + 2/mu^2)
struct ExpClaimMoments {
    double Fbar, EI, M1, M2;
};

inline ExpClaimMoments exp_claim_moments(double d, double mu) {
    const double e = std::exp(-mu * d);
    return {e, e / mu, 1.0 / mu - e * (d + 1.0 / mu),
            2.0 / (mu * mu) - e * (d * d + 2.0 * d / mu + 2.0 / (mu * mu))};
}

// Path-dependent equilibrium coefficients, all indexed by time-to-maturity
// tau_k = k*dt. D and N are D(t), N(t) re-expressed through tau (index 0 is
// t = T where both vanish).
struct PDCoefficients {
    TimeGrid grid;
    std::vector<double> Bbar, Hbar, Cbar, Mbar;  // convolution solutions
    std::vector<double> B, C;                    // pointwise right-hand sides
    std::vector<double> D, N;
    std::vector<double> discount;  // A(tau) = e^{Upsilon tau}
};

// d*(tau) = max(theta~/(gamma A) + Mbar(tau)/A, 0)
inline double pd_deductible(const MarketParams& m, const ClaimParams& cl, double Mbar_tau,
                            double tau) {
    const double A = std::exp(m.upsilon * tau);
    return std::max((cl.theta_tilde / m.gamma + Mbar_tau) / A, 0.0);
}

// alpha* X* / sqrt(v) = (theta - gamma sigma rho Hbar(tau)) / (gamma A(tau))
inline double pd_trading_weight(const MarketParams& m, double Hbar_tau, double tau) {
    return (m.theta - m.gamma * m.sigma * m.rho * Hbar_tau) /
           (m.gamma * std::exp(m.upsilon * tau));
}

// Right-hand side of the coupled (Bbar, Hbar) system in time-to-maturity.
inline std::array<double, 2> pd_rhs_bh(const MarketParams& m, double B, double H) {
    const double g = m.gamma;
    const double cc = g * m.sigma * m.sigma * (1.0 - m.rho * m.rho) / 2.0;
    return {-m.kappa * B - m.theta * m.sigma * m.rho * H - cc * H * H +
                m.theta * m.theta / (2.0 * g),
            -m.beta() * H + m.theta * m.theta / g};
}

// Right-hand side of the coupled (Cbar, Mbar) system; the deductible inside
// g1/g2 carries the positive-part clamp of the admissible strategy.
inline std::array<double, 2> pd_rhs_cm(const MarketParams& m, const ClaimParams& cl,
                                       const HawkesParams& h, double tau, double C, double M) {
    const double g = m.gamma;
    const double A = std::exp(m.upsilon * tau);
    const double d = pd_deductible(m, cl, M, tau);
    const auto mm = exp_claim_moments(d, cl.mu);
    const double g2 = (h.a1 + 1.0) * M - (1.0 + cl.theta_tilde) * A * mm.EI - A * mm.M1 -
                      A * d * mm.Fbar;
    const double g1 = (h.a1 + 1.0) * C - A * (1.0 + cl.theta_tilde) * mm.EI +
                      (g * M - 1.0) * A * mm.M1 - g * A * A / 2.0 * mm.M2 +
                      A * (g * M - 1.0 - g * A / 2.0 * d) * d * mm.Fbar - g / 2.0 * M * M;
    return {g1, g2};
}

inline GridSolution solve_bh(const MarketParams& m, const FractionalKernel& kernel,
                             const TimeGrid& grid) {
    VolterraProblem prob;
    prob.kernel = kernel;
    prob.dimension = 2;
    prob.rhs = [m](double, std::span<const double> x, std::span<double> out) {
        const auto f = pd_rhs_bh(m, x[0], x[1]);
        out[0] = f[0];
        out[1] = f[1];
    };
    return solve_volterra(prob, grid);
}

inline GridSolution solve_cm(const MarketParams& m, const ClaimParams& cl,
                             const HawkesParams& h, const TimeGrid& grid) {
    VolterraProblem prob;
    prob.kernel = h.kernel;
    prob.dimension = 2;
    prob.rhs = [m, cl, h](double tau, std::span<const double> x, std::span<double> out) {
        const auto f = pd_rhs_cm(m, cl, h, tau, x[0], x[1]);
        out[0] = f[0];
        out[1] = f[1];
    };
    return solve_volterra(prob, grid);
}

inline PDCoefficients solve_pd(const MarketParams& m, const ClaimParams& cl,
                               const HawkesParams& h, const TimeGrid& grid) {
    m.validate();
    cl.validate();
    h.validate();
    const std::size_t N = grid.steps;
    const double dt = grid.dt();

    PDCoefficients out{grid, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    {
        GridSolution bh = solve_bh(m, m.fractional_kernel(), grid);
        out.Bbar = std::move(bh.values[0]);
        out.Hbar = std::move(bh.values[1]);
    }
    {
        GridSolution cm = solve_cm(m, cl, h, grid);
        out.Cbar = std::move(cm.values[0]);
        out.Mbar = std::move(cm.values[1]);
    }

    out.B.resize(N + 1);
    out.C.resize(N + 1);
    out.discount.resize(N + 1);
    std::vector<double> dD(N + 1), dN(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        const double tau = grid.time(k);
        out.discount[k] = std::exp(m.upsilon * tau);
        out.B[k] = pd_rhs_bh(m, out.Bbar[k], out.Hbar[k])[0];
        out.C[k] = pd_rhs_cm(m, cl, h, tau, out.Cbar[k], out.Mbar[k])[0];
        dD[k] = m.kappa * m.phi * out.Bbar[k] + h.a0 * out.Cbar[k];
        dN[k] = m.kappa * m.phi * out.Hbar[k] + h.a0 * out.Mbar[k];
    }
    out.D = cumulative_trapezoid(dD, dt);
    out.N = cumulative_trapezoid(dN, dt);
    return out;
}

// F(0, x0) = e^{Upsilon T} x0 + v0 int_0^T B + lambda* int_0^T C + D(0)
inline double pd_value_function(const PDCoefficients& c, const MarketParams& m,
                                double lambda_star) {
    const double dt = c.grid.dt();
    return std::exp(m.upsilon * c.grid.horizon) * m.x0 + m.v0 * trapezoid(c.B, dt) +
           lambda_star * trapezoid(c.C, dt) + c.D.back();
}

}  // namespace pdmv
