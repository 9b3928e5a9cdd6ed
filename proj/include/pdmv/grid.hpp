#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pdmv {

// Uniform grid t_k = k*dt over [0, T]. Depending on context the axis is
// calendar time or time-to-maturity; both use the same layout.
struct TimeGrid {
    double horizon{};
    std::size_t steps{};

    TimeGrid() = default;
    TimeGrid(double T, std::size_t N) : horizon(T), steps(N) {
        if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be > 0");
        if (N < 2) throw std::invalid_argument("TimeGrid: need at least 2 steps");
    }

    double dt() const { return horizon / static_cast<double>(steps); }
    double time(std::size_t k) const { return static_cast<double>(k) * dt(); }
    std::size_t size() const { return steps + 1; }

    std::vector<double> times() const {
        std::vector<double> t(size());
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = time(k);
        return t;
    }
};

// Composite trapezoid of samples y_0..y_N on a uniform grid.
inline double trapezoid(const std::vector<double>& y, double dt) {
    if (y.size() < 2) return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * dt;
}

// Cumulative trapezoid: out[k] = integral over [0, t_k], out[0] = 0.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& y, double dt) {
    std::vector<double> out(y.size(), 0.0);
    for (std::size_t i = 1; i < y.size(); ++i)
        out[i] = out[i - 1] + 0.5 * dt * (y[i - 1] + y[i]);
    return out;
}

}  // namespace pdmv
