#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pdmv {

// Fractional kernel K(t) = t^{delta-1} / Gamma(delta), delta in (1/2, 1].
// K == 1 identically when delta == 1.
struct FractionalKernel {
    double delta{1.0};

    FractionalKernel() = default;
    explicit FractionalKernel(double d) : delta(d) {
        if (!(d > 0.5 && d <= 1.0))
            throw std::invalid_argument("FractionalKernel: delta must be in (1/2, 1]");
    }

    double operator()(double t) const {
        if (delta == 1.0) return 1.0;
        if (!(t > 0.0))
            throw std::domain_error("FractionalKernel: t must be > 0 for delta < 1");
        return std::pow(t, delta - 1.0) / std::tgamma(delta);
    }

    // integral of K over [0, t]
    double integral(double t) const { return std::pow(t, delta) / std::tgamma(delta + 1.0); }
};

// Power-law (Omori) kernel phi(t) = rho1 / (rho2 + t)^p.
// rho1 = 0 and p = 0 are admitted so the kernel can be switched off for
// benchmark runs and flat-kernel sweeps.
struct PowerLawKernel {
    double rho1{1.0};
    double rho2{1.0};
    double p{1.0};

    PowerLawKernel() = default;
    PowerLawKernel(double amplitude, double shift, double exponent)
        : rho1(amplitude), rho2(shift), p(exponent) {
        if (!(rho1 >= 0.0)) throw std::invalid_argument("PowerLawKernel: rho1 must be >= 0");
        if (!(rho2 > 0.0)) throw std::invalid_argument("PowerLawKernel: rho2 must be > 0");
        if (!(p >= 0.0)) throw std::invalid_argument("PowerLawKernel: p must be >= 0");
    }

    double operator()(double t) const {
        if (!(t >= 0.0)) throw std::domain_error("PowerLawKernel: t must be >= 0");
        return rho1 * std::pow(rho2 + t, -p);
    }

    // exact antiderivative: integral of phi over [0, t]
    double integral(double t) const {
        if (std::abs(p - 1.0) < 1e-12)
            return rho1 * std::log((rho2 + t) / rho2);
        const double q = 1.0 - p;
        return rho1 * (std::pow(rho2 + t, q) - std::pow(rho2, q)) / q;
    }
};

using KernelVariant = std::variant<FractionalKernel, PowerLawKernel>;

// One corrector row of the fractional Adams scheme:
//   a[j], j = 0..k+1  (corrector, trapezoid-type)
//   b[j], j = 0..k    (predictor, rectangle-type)
struct AdamsWeightRow {
    std::vector<double> a;
    std::vector<double> b;
};

inline AdamsWeightRow adams_weights_fractional(const FractionalKernel& kernel, double dt,
                                               std::size_t k) {
    if (!(dt > 0.0)) throw std::invalid_argument("adams_weights_fractional: dt must be > 0");
    const double d = kernel.delta;
    const double g2 = std::tgamma(d + 2.0);
    const double g1 = std::tgamma(d + 1.0);
    const double hd = std::pow(dt, d);
    const double kk = static_cast<double>(k);

    AdamsWeightRow w;
    w.a.resize(k + 2);
    w.b.resize(k + 1);
    w.a[0] = hd / g2 * (std::pow(kk, d + 1.0) - (kk - d) * std::pow(kk + 1.0, d));
    for (std::size_t j = 1; j <= k; ++j) {
        const double m = static_cast<double>(k - j);
        w.a[j] = hd / g2 *
                 (std::pow(m + 2.0, d + 1.0) + std::pow(m, d + 1.0) - 2.0 * std::pow(m + 1.0, d + 1.0));
    }
    w.a[k + 1] = hd / g2;
    for (std::size_t j = 0; j <= k; ++j) {
        const double m = static_cast<double>(k - j);
        w.b[j] = hd / g1 * (std::pow(m + 1.0, d) - std::pow(m, d));
    }
    return w;
}

inline void check_powerlaw_exponent(double p) {
    if (std::abs(p - 1.0) < 1e-9 || std::abs(p - 2.0) < 1e-9)
        throw std::domain_error("power-law Adams weights are singular at p = 1 and p = 2");
}

inline AdamsWeightRow adams_weights_powerlaw(const PowerLawKernel& kernel, double dt,
                                             std::size_t k) {
    if (!(dt > 0.0)) throw std::invalid_argument("adams_weights_powerlaw: dt must be > 0");
    check_powerlaw_exponent(kernel.p);
    const double r1 = kernel.rho1, r2 = kernel.rho2, p = kernel.p;
    const double q1 = 1.0 - p, q2 = 2.0 - p;
    const double den = dt * q1 * q2;
    const double kk = static_cast<double>(k);

    AdamsWeightRow w;
    w.a.resize(k + 2);
    w.b.resize(k + 1);
    w.a[0] = r1 *
             (dt * q2 * std::pow(r2 + (kk + 1.0) * dt, q1) - std::pow(r2 + (kk + 1.0) * dt, q2) +
              std::pow(r2 + kk * dt, q2)) /
             den;
    for (std::size_t j = 1; j <= k; ++j) {
        const double m = static_cast<double>(k - j);
        w.a[j] = r1 *
                 (std::pow(r2 + m * dt, q2) - 2.0 * std::pow(r2 + (m + 1.0) * dt, q2) +
                  std::pow(r2 + (m + 2.0) * dt, q2)) /
                 den;
    }
    w.a[k + 1] = r1 * ((std::pow(r2 + dt, q2) - std::pow(r2, q2)) - dt * q2 * std::pow(r2, q1)) / den;
    for (std::size_t j = 0; j <= k; ++j) {
        const double m = static_cast<double>(k - j);
        w.b[j] = r1 * (std::pow(r2 + (m + 1.0) * dt, q1) - std::pow(r2 + m * dt, q1)) / q1;
    }
    return w;
}

// Lag-indexed weight cache for a whole grid. Interior a-weights and all
// b-weights depend only on the lag k - j, the first column depends on k;
// caching turns an O(N^2) solve of pow() calls into O(N).
class AdamsWeightCache {
public:
    AdamsWeightCache(const FractionalKernel& kernel, double dt, std::size_t n_steps)
        : dt_(dt) {
        const double d = kernel.delta;
        const double g2 = std::tgamma(d + 2.0);
        const double g1 = std::tgamma(d + 1.0);
        const double hd = std::pow(dt, d);
        interior_.resize(n_steps + 1);
        b_.resize(n_steps + 1);
        first_.resize(n_steps);
        for (std::size_t m = 0; m <= n_steps; ++m) {
            const double mm = static_cast<double>(m);
            interior_[m] = hd / g2 *
                           (std::pow(mm + 2.0, d + 1.0) + std::pow(mm, d + 1.0) -
                            2.0 * std::pow(mm + 1.0, d + 1.0));
            b_[m] = hd / g1 * (std::pow(mm + 1.0, d) - std::pow(mm, d));
        }
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double kk = static_cast<double>(k);
            first_[k] = hd / g2 * (std::pow(kk, d + 1.0) - (kk - d) * std::pow(kk + 1.0, d));
        }
        diag_ = hd / g2;
    }

    AdamsWeightCache(const PowerLawKernel& kernel, double dt, std::size_t n_steps)
        : dt_(dt) {
        check_powerlaw_exponent(kernel.p);
        const double r1 = kernel.rho1, r2 = kernel.rho2, p = kernel.p;
        const double q1 = 1.0 - p, q2 = 2.0 - p;
        const double den = dt * q1 * q2;
        interior_.resize(n_steps + 1);
        b_.resize(n_steps + 1);
        first_.resize(n_steps);
        for (std::size_t m = 0; m <= n_steps; ++m) {
            const double mm = static_cast<double>(m);
            interior_[m] = r1 *
                           (std::pow(r2 + mm * dt, q2) - 2.0 * std::pow(r2 + (mm + 1.0) * dt, q2) +
                            std::pow(r2 + (mm + 2.0) * dt, q2)) /
                           den;
            b_[m] = r1 * (std::pow(r2 + (mm + 1.0) * dt, q1) - std::pow(r2 + mm * dt, q1)) / q1;
        }
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double kk = static_cast<double>(k);
            first_[k] = r1 *
                        (dt * q2 * std::pow(r2 + (kk + 1.0) * dt, q1) -
                         std::pow(r2 + (kk + 1.0) * dt, q2) + std::pow(r2 + kk * dt, q2)) /
                        den;
        }
        diag_ = r1 * ((std::pow(r2 + dt, q2) - std::pow(r2, q2)) - dt * q2 * std::pow(r2, q1)) / den;
    }

    explicit AdamsWeightCache(const KernelVariant& kernel, double dt, std::size_t n_steps)
        : AdamsWeightCache(make(kernel, dt, n_steps)) {}

    // a_{j,k+1}: j = 0 uses first_[k], j = k+1 uses diag_, else lag k-j.
    double a(std::size_t j, std::size_t k) const {
        if (j == 0) return first_[k];
        if (j == k + 1) return diag_;
        return interior_[k - j];
    }
    double b_lag(std::size_t lag) const { return b_[lag]; }
    double interior_lag(std::size_t lag) const { return interior_[lag]; }
    double first(std::size_t k) const { return first_[k]; }
    double diag() const { return diag_; }
    double dt() const { return dt_; }

private:
    static AdamsWeightCache make(const KernelVariant& kernel, double dt, std::size_t n) {
        return std::visit([&](const auto& k) { return AdamsWeightCache(k, dt, n); }, kernel);
    }

    double dt_{};
    double diag_{};
    std::vector<double> interior_;  // a_{j,k+1}, 1 <= j <= k, indexed by lag k-j
    std::vector<double> b_;         // b_{j,k+1}, indexed by lag k-j
    std::vector<double> first_;     // a_{0,k+1}, indexed by k
};

inline double kernel_eval(const KernelVariant& kernel, double t) {
    return std::visit([&](const auto& k) { return k(t); }, kernel);
}

inline double kernel_integral(const KernelVariant& kernel, double t) {
    return std::visit([&](const auto& k) { return k.integral(t); }, kernel);
}

}  // namespace pdmv
