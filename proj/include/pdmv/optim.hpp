#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace pdmv {

struct NelderMeadOptions {
    std::size_t max_iter{800};
    double x_tol{1e-5};
    double f_tol{1e-7};
    double initial_step{0.25};
};

struct NelderMeadResult {
    std::vector<double> x;
    double f{};
    std::size_t iterations{};
    bool converged{};
};

// Derivative-free simplex minimization of f over R^n (standard reflection /
// expansion / contraction / shrink coefficients).
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0,
                                    const NelderMeadOptions& opt = {}) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += (x0[i] != 0.0 ? opt.initial_step * std::abs(x0[i]) : opt.initial_step);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<std::size_t> ord(n + 1);
    std::vector<double> cen(n), xr(n), xe(n), xc(n);
    NelderMeadResult res;
    for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
        std::iota(ord.begin(), ord.end(), std::size_t{0});
        std::sort(ord.begin(), ord.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        const std::size_t best = ord[0], worst = ord[n], second = ord[n - 1];

        double fspread = std::abs(fv[worst] - fv[best]);
        double xspread = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            xspread = std::max(xspread, std::abs(pts[worst][i] - pts[best][i]));
        if (fspread < opt.f_tol && xspread < opt.x_tol) {
            res.converged = true;
            break;
        }

        std::fill(cen.begin(), cen.end(), 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == worst) continue;
            for (std::size_t i = 0; i < n; ++i) cen[i] += pts[j][i];
        }
        for (std::size_t i = 0; i < n; ++i) cen[i] /= static_cast<double>(n);

        for (std::size_t i = 0; i < n; ++i) xr[i] = cen[i] + (cen[i] - pts[worst][i]);
        const double fr = f(xr);
        if (fr < fv[best]) {
            for (std::size_t i = 0; i < n; ++i) xe[i] = cen[i] + 2.0 * (cen[i] - pts[worst][i]);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            for (std::size_t i = 0; i < n; ++i)
                xc[i] = outside ? cen[i] + 0.5 * (xr[i] - cen[i])
                                : cen[i] - 0.5 * (cen[i] - pts[worst][i]);
            const double fc = f(xc);
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t j = 0; j <= n; ++j) {
                    if (j == best) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        pts[j][i] = pts[best][i] + 0.5 * (pts[j][i] - pts[best][i]);
                    fv[j] = f(pts[j]);
                }
            }
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    res.f = *it;
    res.x = pts[static_cast<std::size_t>(it - fv.begin())];
    return res;
}

// Latin-hypercube sample of `count` points in the box [lo, hi]^dims.
inline std::vector<std::vector<double>> latin_hypercube(const std::vector<double>& lo,
                                                        const std::vector<double>& hi,
                                                        std::size_t count, std::uint64_t seed) {
    if (lo.size() != hi.size()) throw std::invalid_argument("latin_hypercube: bound mismatch");
    const std::size_t d = lo.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> pts(count, std::vector<double>(d));
    std::vector<std::size_t> perm(count);
    for (std::size_t i = 0; i < d; ++i) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t s = 0; s < count; ++s) {
            const double frac = (static_cast<double>(perm[s]) + u(rng)) /
                                static_cast<double>(count);
            pts[s][i] = lo[i] + (hi[i] - lo[i]) * frac;
        }
    }
    return pts;
}

}  // namespace pdmv
