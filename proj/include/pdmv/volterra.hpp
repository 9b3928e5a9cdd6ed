#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "kernels.hpp"

namespace pdmv {

// System of Volterra equations x(t) = int_0^t k(t-s) f(s, x(s)) ds with
// x(0) = 0. rhs writes f(t, x) into out (both of size dimension).
struct VolterraProblem {
    KernelVariant kernel;
    std::function<void(double, std::span<const double>, std::span<double>)> rhs;
    std::size_t dimension{1};
};

struct GridSolution {
    TimeGrid grid;
    std::vector<std::vector<double>> values;  // [component][node]

    const std::vector<double>& component(std::size_t c) const { return values.at(c); }
};

// Fractional Adams predictor-corrector, one corrector pass (PECE).
inline GridSolution solve_volterra(const VolterraProblem& problem, const TimeGrid& grid) {
    if (problem.dimension < 1)
        throw std::invalid_argument("solve_volterra: dimension must be >= 1");
    if (!problem.rhs) throw std::invalid_argument("solve_volterra: missing rhs");

    const std::size_t d = problem.dimension;
    const std::size_t N = grid.steps;
    const double dt = grid.dt();
    const AdamsWeightCache w(problem.kernel, dt, N);

    std::vector<std::vector<double>> x(d, std::vector<double>(N + 1, 0.0));
    std::vector<std::vector<double>> f(d, std::vector<double>(N + 1, 0.0));
    std::vector<double> xk(d, 0.0), fk(d, 0.0);

    auto eval = [&](double t, std::span<const double> state, std::span<double> out,
                    std::size_t step) {
        problem.rhs(t, state, out);
        for (std::size_t c = 0; c < d; ++c)
            if (!std::isfinite(out[c]))
                throw std::runtime_error("solve_volterra: non-finite rhs at step " +
                                         std::to_string(step) + ", component " +
                                         std::to_string(c));
    };

    eval(0.0, xk, fk, 0);
    for (std::size_t c = 0; c < d; ++c) f[c][0] = fk[c];

    std::vector<double> xP(d);
    for (std::size_t k = 0; k < N; ++k) {
        const double t1 = grid.time(k + 1);
        for (std::size_t c = 0; c < d; ++c) {
            double s = 0.0;
            for (std::size_t j = 0; j <= k; ++j) s += w.b_lag(k - j) * f[c][j];
            xP[c] = s;
        }
        eval(t1, xP, fk, k + 1);
        for (std::size_t c = 0; c < d; ++c) {
            double s = w.first(k) * f[c][0];
            for (std::size_t j = 1; j <= k; ++j) s += w.interior_lag(k - j) * f[c][j];
            s += w.diag() * fk[c];
            x[c][k + 1] = s;
            xk[c] = s;
        }
        eval(t1, xk, fk, k + 1);
        for (std::size_t c = 0; c < d; ++c) f[c][k + 1] = fk[c];
    }
    return GridSolution{grid, std::move(x)};
}

// Corrector-weight quadrature of int_0^{t_i} k(t_i - s) g(s) ds from samples
// g(t_0)..g(t_i); exact for piecewise-linear g.
inline double convolve_tail(std::span<const double> samples, const KernelVariant& kernel,
                            const TimeGrid& grid, std::size_t i) {
    if (i >= grid.size() || i >= samples.size())
        throw std::out_of_range("convolve_tail: index beyond grid or samples");
    if (i == 0) return 0.0;
    const AdamsWeightCache w(kernel, grid.dt(), i);
    const std::size_t k = i - 1;
    double s = w.first(k) * samples[0];
    for (std::size_t j = 1; j <= k; ++j) s += w.interior_lag(k - j) * samples[j];
    s += w.diag() * samples[i];
    return s;
}

}  // namespace pdmv
