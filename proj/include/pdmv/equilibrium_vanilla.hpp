#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "grid.hpp"
#include "params.hpp"

namespace pdmv {

// Vanilla benchmark: classical Heston variance, constant claim intensity.
// All arrays are indexed by time-to-maturity tau_k = k*dt (tau = T - t), so
// index 0 is the terminal time t = T. D and N are stored as D(t), N(t)
// re-expressed through tau: D[k] = integral over [0, tau_k] of the integrand.
struct VanillaCoefficients {
    TimeGrid grid;
    std::vector<double> H, B, D, N;
    std::vector<double> discount;  // A(tau) = e^{Upsilon * tau}
};

// Closed-form H(tau) = (theta^2/gamma)(1 - e^{-beta tau})/beta, beta = kappa + theta sigma rho.
inline double vanilla_H(const MarketParams& m, double tau) {
    const double beta = m.beta();
    const double c = m.theta * m.theta / m.gamma;
    if (std::abs(beta) < 1e-14) return c * tau;
    return c * (1.0 - std::exp(-beta * tau)) / beta;
}

inline VanillaCoefficients solve_vanilla(const MarketParams& m, const ClaimParams& cl,
                                         double lambda_star, const TimeGrid& grid) {
    m.validate();
    cl.validate();
    const std::size_t N = grid.steps;
    const double dt = grid.dt();
    const double g = m.gamma;
    const double cc = g * m.sigma * m.sigma * (1.0 - m.rho * m.rho) / 2.0;
    const double tsr = m.theta * m.sigma * m.rho;
    const double th2 = m.theta * m.theta;

    VanillaCoefficients out{grid, {}, {}, {}, {}, {}};
    out.H.resize(N + 1);
    out.B.assign(N + 1, 0.0);
    out.discount.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        const double tau = grid.time(k);
        out.H[k] = vanilla_H(m, tau);
        out.discount[k] = std::exp(m.upsilon * tau);
    }

    // dB/dtau = -kappa B - theta sigma rho H - cc H^2 + theta^2/(2 gamma),
    // implicit trapezoid (linear in B).
    for (std::size_t k = 0; k < N; ++k) {
        const double fk = -m.kappa * out.B[k] - tsr * out.H[k] - cc * out.H[k] * out.H[k] +
                          th2 / (2.0 * g);
        const double rhs1 = -tsr * out.H[k + 1] - cc * out.H[k + 1] * out.H[k + 1] +
                            th2 / (2.0 * g);
        out.B[k + 1] = (out.B[k] + dt / 2.0 * (fk + rhs1)) / (1.0 + dt / 2.0 * m.kappa);
    }

    std::vector<double> dD(N + 1), dN(N + 1);
    const double ls = lambda_star;
    for (std::size_t k = 0; k <= N; ++k) {
        const double A = out.discount[k];
        const double e = std::exp(-cl.mu * cl.theta_tilde / (g * A));
        dD[k] = m.kappa * m.phi * out.B[k] - ls / cl.mu * A -
                g * ls / (cl.mu * cl.mu) * A * A * (1.0 - e);
        dN[k] = m.kappa * m.phi * out.H[k] - ls / cl.mu * A -
                cl.theta_tilde * ls / cl.mu * A * e;
    }
    out.D = cumulative_trapezoid(dD, dt);
    out.N = cumulative_trapezoid(dN, dt);
    return out;
}

// alpha~ X~ / sqrt(v) = (theta - gamma sigma rho H(tau)) / (gamma A(tau))
inline double vanilla_trading_weight(const MarketParams& m, double H_tau, double tau) {
    return (m.theta - m.gamma * m.sigma * m.rho * H_tau) /
           (m.gamma * std::exp(m.upsilon * tau));
}

// d~*(tau) = max(theta~ / (gamma A(tau)), 0)
inline double vanilla_deductible(const MarketParams& m, const ClaimParams& cl, double tau) {
    return std::max(cl.theta_tilde / (m.gamma * std::exp(m.upsilon * tau)), 0.0);
}

}  // namespace pdmv
