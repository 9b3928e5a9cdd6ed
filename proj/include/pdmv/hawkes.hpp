#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "optim.hpp"
#include "params.hpp"

namespace pdmv {

struct EventCatalog {
    std::vector<double> times;       // strictly increasing, years from window start
    double horizon{};                // observation window length T
    std::vector<double> magnitudes;  // optional, parallel to times when present

    void validate() const {
        if (!(horizon > 0.0)) throw std::invalid_argument("EventCatalog: horizon must be > 0");
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] < 0.0 || times[i] > horizon)
                throw std::invalid_argument("EventCatalog: event time outside [0, T]");
            if (i > 0 && !(times[i] > times[i - 1]))
                throw std::invalid_argument("EventCatalog: times must be strictly increasing");
        }
    }
};

struct IntensityPath {
    TimeGrid grid;
    std::vector<double> lambda;
    std::size_t clamped{};  // count of nodes where the raw recursion went negative
};

namespace detail {

// phi evaluated at positive lags m*h, m = 1..N
inline std::vector<double> phi_lags(const PowerLawKernel& phi, double h, std::size_t N) {
    std::vector<double> v(N + 1, 0.0);
    for (std::size_t m = 1; m <= N; ++m) v[m] = phi(static_cast<double>(m) * h);
    return v;
}

}  // namespace detail

// Discretized intensity recursion:
//   lambda_i = max(lambda* + h sum_{k<i} phi(t_i - t_k)(a0 + a1 lambda_k)
//                          + sum_{t_j < t_i} phi(t_i - t_j), 0)
inline IntensityPath intensity_on_grid(const HawkesParams& params, const EventCatalog& catalog,
                                       const TimeGrid& grid) {
    params.validate();
    catalog.validate();
    const std::size_t N = grid.steps;
    const double h = grid.dt();
    const auto philag = detail::phi_lags(params.kernel, h, N);

    IntensityPath out{grid, std::vector<double>(N + 1), 0};
    std::vector<double> g(N + 1);
    out.lambda[0] = params.lambda_star;
    g[0] = params.a0 + params.a1 * params.lambda_star;
    for (std::size_t i = 1; i <= N; ++i) {
        const double ti = grid.time(i);
        double drift = 0.0;
        for (std::size_t k = 0; k < i; ++k) drift += philag[i - k] * g[k];
        drift *= h;
        double exc = 0.0;
        for (double te : catalog.times) {
            if (te >= ti) break;
            exc += params.kernel(ti - te);
        }
        double raw = params.lambda_star + drift + exc;
        if (raw < 0.0) {
            raw = 0.0;
            ++out.clamped;
        }
        out.lambda[i] = raw;
        g[i] = params.a0 + params.a1 * raw;
    }
    return out;
}

// l = sum_j log lambda(t_j^-) - int_0^T lambda, integral by composite
// trapezoid on the grid. Event-time intensity uses the left limit: drift sum
// over grid nodes strictly below t_j, excitation over strictly earlier events.
// Returns -inf if any event-time intensity is <= 0.
inline double log_likelihood(const HawkesParams& params, const EventCatalog& catalog,
                             const TimeGrid& grid) {
    const IntensityPath path = intensity_on_grid(params, catalog, grid);
    const std::size_t N = grid.steps;
    const double h = grid.dt();
    const double integral = trapezoid(path.lambda, h);

    std::vector<double> g(N + 1);
    for (std::size_t k = 0; k <= N; ++k) g[k] = params.a0 + params.a1 * path.lambda[k];

    double s = 0.0;
    for (std::size_t j = 0; j < catalog.times.size(); ++j) {
        const double te = catalog.times[j];
        const auto i = std::min(static_cast<std::size_t>(te / h), N);
        double drift = 0.0;
        for (std::size_t k = 0; k < i; ++k)
            drift += params.kernel(te - grid.time(k)) * g[k];
        drift *= h;
        double exc = 0.0;
        for (std::size_t jj = 0; jj < j; ++jj) exc += params.kernel(te - catalog.times[jj]);
        const double l = params.lambda_star + drift + exc;
        if (!(l > 0.0)) return -std::numeric_limits<double>::infinity();
        s += std::log(l);
    }
    return s - integral;
}

// Grid-based simulation: per step draw dN ~ Poisson(lambda_k * h), place the
// events uniformly within the step, then advance the intensity recursion with
// the drawn events included.
inline EventCatalog simulate(const HawkesParams& params, double horizon, const TimeGrid& grid,
                             std::uint64_t seed) {
    params.validate();
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate: horizon must be > 0");
    if (std::abs(grid.horizon - horizon) > 1e-12 * std::max(1.0, horizon))
        throw std::invalid_argument("simulate: grid horizon mismatch");

    const std::size_t N = grid.steps;
    const double h = grid.dt();
    const auto philag = detail::phi_lags(params.kernel, h, N);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<double> lambda(N + 1), g(N + 1);
    lambda[0] = params.lambda_star;
    g[0] = params.a0 + params.a1 * params.lambda_star;
    std::vector<double> events;
    for (std::size_t i = 1; i <= N; ++i) {
        const double tprev = grid.time(i - 1);
        std::poisson_distribution<int> pois(lambda[i - 1] * h);
        const int n = lambda[i - 1] > 0.0 ? pois(rng) : 0;
        std::vector<double> fresh(static_cast<std::size_t>(n));
        for (auto& te : fresh) te = tprev + unif(rng) * h;
        std::sort(fresh.begin(), fresh.end());
        events.insert(events.end(), fresh.begin(), fresh.end());

        const double ti = grid.time(i);
        double drift = 0.0;
        for (std::size_t k = 0; k < i; ++k) drift += philag[i - k] * g[k];
        drift *= h;
        double exc = 0.0;
        for (double te : events)
            if (te < ti) exc += params.kernel(ti - te);
        lambda[i] = std::max(params.lambda_star + drift + exc, 0.0);
        g[i] = params.a0 + params.a1 * lambda[i];
    }
    // uniform placement can collide at double precision; nudge to keep order strict
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i] <= events[i - 1])
            events[i] = std::nextafter(events[i - 1], std::numeric_limits<double>::max());
    while (!events.empty() && events.back() > horizon) events.pop_back();
    return EventCatalog{std::move(events), horizon, {}};
}

// Closed-form homogeneous-Poisson fit lambda = k/T.
struct PoissonFit {
    double lambda_hat{};
    double log_likelihood{};
};

inline PoissonFit poisson_fit(const EventCatalog& catalog) {
    const double k = static_cast<double>(catalog.times.size());
    if (k == 0.0) return {0.0, 0.0};
    const double lam = k / catalog.horizon;
    return {lam, k * std::log(lam) - lam * catalog.horizon};
}

struct CalibrationBounds {
    double lambda_star_lo{1e-3}, lambda_star_hi{1e3};
    double rho1_lo{1e-8}, rho1_hi{1e3};
    double rho2_lo{1e-6}, rho2_hi{10.0};
    double p_lo{0.05}, p_hi{3.0};
    double a0_lo{1e-8}, a0_hi{1e3};
    double a1_lo{-10.0}, a1_hi{10.0};
};

struct CalibrationResult {
    HawkesParams params;
    double log_likelihood{-std::numeric_limits<double>::infinity()};
    double baseline_log_likelihood{};  // constant-intensity closed-form fit
    bool converged{};
    std::size_t starts{};
};

namespace detail {

// optimizer coordinates: log for positive parameters, raw for p and a1
inline std::vector<double> to_coords(const HawkesParams& p) {
    return {std::log(p.lambda_star), std::log(std::max(p.kernel.rho1, 1e-12)),
            std::log(p.kernel.rho2), p.kernel.p, std::log(std::max(p.a0, 1e-12)), p.a1};
}

inline HawkesParams from_coords(const std::vector<double>& z) {
    HawkesParams p;
    p.lambda_star = std::exp(z[0]);
    p.kernel = PowerLawKernel{std::exp(z[1]), std::exp(z[2]), std::max(z[3], 0.0)};
    p.a0 = std::exp(z[4]);
    p.a1 = z[5];
    return p;
}

inline bool in_bounds(const HawkesParams& p, const CalibrationBounds& b) {
    return p.lambda_star >= b.lambda_star_lo && p.lambda_star <= b.lambda_star_hi &&
           p.kernel.rho1 >= b.rho1_lo && p.kernel.rho1 <= b.rho1_hi &&
           p.kernel.rho2 >= b.rho2_lo && p.kernel.rho2 <= b.rho2_hi &&
           p.kernel.p >= b.p_lo && p.kernel.p <= b.p_hi && p.a0 >= b.a0_lo &&
           p.a0 <= b.a0_hi && p.a1 >= b.a1_lo && p.a1 <= b.a1_hi;
}

}  // namespace detail

// Multi-start MLE over (lambda*, rho1, rho2, p, a0, a1). Starts: the
// Poisson-equivalent point (excitation switched off at its lower bound) plus
// Latin-hypercube draws. Never returns a fit below the constant-intensity
// baseline; converged is false when no start beats that baseline.
inline CalibrationResult calibrate(const EventCatalog& catalog, const TimeGrid& grid,
                                   std::size_t starts = 8, const CalibrationBounds& bounds = {},
                                   std::uint64_t seed = 20240817) {
    catalog.validate();
    if (catalog.times.empty()) throw std::invalid_argument("calibrate: empty catalog");

    const PoissonFit base = poisson_fit(catalog);
    auto objective = [&](const std::vector<double>& z) {
        const HawkesParams p = detail::from_coords(z);
        if (!detail::in_bounds(p, bounds)) return 1e18;
        const double ll = log_likelihood(p, catalog, grid);
        return std::isfinite(ll) ? -ll : 1e18;
    };

    std::vector<std::vector<double>> start_pts;
    {
        HawkesParams p0;
        p0.lambda_star = std::max(base.lambda_hat, bounds.lambda_star_lo);
        p0.kernel = PowerLawKernel{bounds.rho1_lo, 0.01, 0.5};
        p0.a0 = bounds.a0_lo;
        p0.a1 = 0.0;
        start_pts.push_back(detail::to_coords(p0));
    }
    if (starts > 1) {
        const std::vector<double> lo = {std::log(std::max(base.lambda_hat / 4.0, bounds.lambda_star_lo)),
                                        std::log(1e-2), std::log(1e-3), 0.2, std::log(1e-2), -3.0};
        const std::vector<double> hi = {std::log(std::max(base.lambda_hat * 4.0, 1.0)),
                                        std::log(5.0), std::log(0.5), 1.8, std::log(10.0), 0.5};
        for (auto& z : latin_hypercube(lo, hi, starts - 1, seed)) start_pts.push_back(z);
    }

    NelderMeadOptions opt;
    opt.max_iter = 600;
    opt.x_tol = 1e-4;
    opt.f_tol = 1e-6;

    CalibrationResult best;
    best.baseline_log_likelihood = base.log_likelihood;
    best.starts = start_pts.size();
    for (const auto& z0 : start_pts) {
        const NelderMeadResult r = nelder_mead(objective, z0, opt);
        if (-r.f > best.log_likelihood) {
            best.log_likelihood = -r.f;
            best.params = detail::from_coords(r.x);
        }
    }
    best.converged = best.log_likelihood >= base.log_likelihood - 1e-9;
    if (best.log_likelihood < base.log_likelihood) {
        HawkesParams p0;
        p0.lambda_star = std::max(base.lambda_hat, bounds.lambda_star_lo);
        p0.kernel = PowerLawKernel{bounds.rho1_lo, 0.01, 0.5};
        p0.a0 = bounds.a0_lo;
        p0.a1 = 0.0;
        best.params = p0;
        best.log_likelihood = log_likelihood(p0, catalog, grid);
    }
    return best;
}

}  // namespace pdmv
