#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "kernels.hpp"
#include "params.hpp"

namespace pdmv {

struct SimConfig {
    std::size_t paths{20000};
    TimeGrid grid{10.0, 256};
    std::uint64_t seed{42};
    bool clamp_variance{true};  // full truncation inside sqrt
};

struct PathBundle {
    std::vector<double> terminal;  // X(T) per path
    double mean{};
    double variance{};
    double std_error{};
    std::size_t negative_wealth_paths{};
    double clamp_fraction{};  // fraction of (path, step) pairs with v < 0
};

// Deterministic strategy series sampled at calendar-time nodes t_k = k*dt.
struct StrategySeries {
    std::vector<double> weight;      // alpha X / sqrt(v)
    std::vector<double> deductible;  // d(t_k)
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e9b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// Left-point Euler for v_t = v0 + int K(t-r)[kappa(phi - v_r)dr + sigma sqrt(v_r) dB_r].
// dB is passed in (already correlated with the stock shock by the caller).
inline std::vector<double> simulate_variance(const MarketParams& m,
                                             const FractionalKernel& kernel,
                                             const TimeGrid& grid,
                                             const std::vector<double>& dB,
                                             std::size_t* clamped = nullptr) {
    const std::size_t N = grid.steps;
    if (dB.size() < N) throw std::invalid_argument("simulate_variance: short increment array");
    const double dt = grid.dt();
    std::vector<double> v(N + 1, m.v0), inc(N, 0.0);
    std::vector<double> klag(N + 1, 0.0);
    for (std::size_t l = 1; l <= N; ++l) klag[l] = kernel(static_cast<double>(l) * dt);

    double running = 0.0;  // used when K == 1 (delta = 1)
    const bool flat = kernel.delta == 1.0;
    for (std::size_t k = 0; k < N; ++k) {
        double vp = v[k];
        if (vp < 0.0) {
            vp = 0.0;
            if (clamped) ++*clamped;
        }
        inc[k] = m.kappa * (m.phi - v[k]) * dt + m.sigma * std::sqrt(vp) * dB[k];
        if (flat) {
            running += inc[k];
            v[k + 1] = m.v0 + running;
        } else {
            double s = 0.0;
            for (std::size_t j = 0; j <= k; ++j) s += klag[k + 1 - j] * inc[j];
            v[k + 1] = m.v0 + s;
        }
    }
    return v;
}

// Euler scheme for the wealth equation under a deterministic strategy series:
// drift [Upsilon + theta sqrt(v) alpha] X - lambda (1+theta~) E[(Y-d)^+],
// diffusion alpha X dW1, retention min(Y, d) at simulated Hawkes events.
// Strategy series are evaluated at step midpoints.
inline PathBundle simulate_wealth(const MarketParams& m, const ClaimParams& cl,
                                  const HawkesParams& h, const StrategySeries& strategy,
                                  const SimConfig& cfg) {
    m.validate();
    cl.validate();
    h.validate();
    const std::size_t N = cfg.grid.steps;
    if (strategy.weight.size() != N + 1 || strategy.deductible.size() != N + 1)
        throw std::invalid_argument("simulate_wealth: strategy series must have N+1 samples");
    const double dt = cfg.grid.dt();
    const FractionalKernel K = m.fractional_kernel();
    const bool plain_poisson = h.kernel.rho1 == 0.0 && h.a0 == 0.0;

    std::vector<double> philag;
    if (!plain_poisson) {
        philag.assign(N + 1, 0.0);
        for (std::size_t l = 1; l <= N; ++l) philag[l] = h.kernel(static_cast<double>(l) * dt);
    }

    PathBundle out;
    out.terminal.resize(cfg.paths);
    std::size_t clamped = 0;

    std::vector<double> dW1(N), dB(N), lam, g;
    std::vector<double> events;
    const double sdt = std::sqrt(dt);
    const double rr = std::sqrt(1.0 - m.rho * m.rho);

    for (std::size_t path = 0; path < cfg.paths; ++path) {
        std::mt19937_64 rng(detail::splitmix64(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (path + 1))));
        std::normal_distribution<double> norm(0.0, 1.0);
        std::exponential_distribution<double> expo(cl.mu);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        for (std::size_t k = 0; k < N; ++k) {
            const double z1 = norm(rng), z2 = norm(rng);
            dW1[k] = sdt * z1;
            dB[k] = sdt * (m.rho * z1 + rr * z2);
        }
        const std::vector<double> v = simulate_variance(m, K, cfg.grid, dB, &clamped);

        if (!plain_poisson) {
            lam.assign(N + 1, h.lambda_star);
            g.assign(N + 1, h.a0 + h.a1 * h.lambda_star);
            events.clear();
        }

        double X = m.x0;
        for (std::size_t k = 0; k < N; ++k) {
            const double vp = std::max(v[k], 0.0);
            const double wm = 0.5 * (strategy.weight[k] + strategy.weight[k + 1]);
            const double dm = 0.5 * (strategy.deductible[k] + strategy.deductible[k + 1]);
            const double lambda_k = plain_poisson ? h.lambda_star : lam[k];
            const double premium =
                lambda_k * (1.0 + cl.theta_tilde) * std::exp(-cl.mu * dm) / cl.mu;

            X += (m.upsilon * X + m.theta * vp * wm - premium) * dt + wm * std::sqrt(vp) * dW1[k];

            std::poisson_distribution<int> pois(std::max(lambda_k, 0.0) * dt);
            const int n = lambda_k > 0.0 ? pois(rng) : 0;
            for (int e = 0; e < n; ++e) {
                const double Y = expo(rng);
                X -= std::min(Y, dm);
                if (!plain_poisson)
                    events.push_back(cfg.grid.time(k) + unif(rng) * dt);
            }

            if (!plain_poisson) {
                const double ti = cfg.grid.time(k + 1);
                double drift = 0.0;
                for (std::size_t j = 0; j <= k; ++j) drift += philag[k + 1 - j] * g[j];
                drift *= dt;
                double exc = 0.0;
                for (double te : events)
                    if (te < ti) exc += h.kernel(ti - te);
                lam[k + 1] = std::max(h.lambda_star + drift + exc, 0.0);
                g[k + 1] = h.a0 + h.a1 * lam[k + 1];
            }
        }
        out.terminal[path] = X;
        if (X < 0.0) ++out.negative_wealth_paths;
    }

    double s = 0.0;
    for (double x : out.terminal) s += x;
    out.mean = s / static_cast<double>(cfg.paths);
    double s2 = 0.0;
    for (double x : out.terminal) s2 += (x - out.mean) * (x - out.mean);
    out.variance = cfg.paths > 1 ? s2 / static_cast<double>(cfg.paths - 1) : 0.0;
    out.std_error = cfg.paths > 1
                        ? std::sqrt(out.variance / static_cast<double>(cfg.paths))
                        : std::numeric_limits<double>::quiet_NaN();
    out.clamp_fraction =
        static_cast<double>(clamped) / (static_cast<double>(cfg.paths) * static_cast<double>(N));
    return out;
}

// J = E[X(T)] - (gamma/2) Var[X(T)]
inline double estimate_objective(const PathBundle& bundle, double gamma) {
    if (bundle.terminal.empty()) throw std::invalid_argument("estimate_objective: empty bundle");
    return bundle.mean - gamma / 2.0 * bundle.variance;
}

}  // namespace pdmv
