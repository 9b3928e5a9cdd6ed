#pragma once

#include <stdexcept>

#include "kernels.hpp"

namespace pdmv {

// Base-scenario market parameters (defaults: calibrated base case).
struct MarketParams {
    double upsilon{0.02};  // risk-free rate (1/yr)
    double theta{5.0};     // risk-premium slope
    double kappa{0.173};   // variance mean-reversion (1/yr)
    double phi{0.170};     // long-run variance
    double sigma{0.340};   // vol-of-vol
    double rho{-0.615};    // stock/variance correlation
    double gamma{1.0};     // risk aversion
    double v0{0.018};      // initial variance
    double x0{1.0};        // initial wealth
    double delta{0.6};     // fractional-kernel roughness

    void validate() const {
        if (!(gamma > 0.0)) throw std::invalid_argument("MarketParams: gamma must be > 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("MarketParams: sigma must be > 0");
        if (!(rho >= -1.0 && rho <= 1.0))
            throw std::invalid_argument("MarketParams: rho must be in [-1, 1]");
        if (!(v0 >= 0.0)) throw std::invalid_argument("MarketParams: v0 must be >= 0");
        FractionalKernel{delta};  // range check
    }

    FractionalKernel fractional_kernel() const { return FractionalKernel{delta}; }
    double beta() const { return kappa + theta * sigma * rho; }
};

// Exponential claim-size distribution F(y) = 1 - e^{-mu y} with safety loading.
struct ClaimParams {
    double mu{4.0};           // claim rate (1/loss-size)
    double theta_tilde{0.2};  // safety loading

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("ClaimParams: mu must be > 0");
        if (!(theta_tilde >= 0.0))
            throw std::invalid_argument("ClaimParams: theta_tilde must be >= 0");
    }
};

// Hawkes intensity parameters (defaults: fitted Sichuan values).
struct HawkesParams {
    double lambda_star{6.310822};  // baseline intensity (events/yr)
    double a0{2.233946};           // drift constant
    double a1{-2.167217};          // drift slope
    PowerLawKernel kernel{1.079113, 0.001, 0.556834};

    void validate() const {
        if (!(lambda_star >= 0.0))
            throw std::invalid_argument("HawkesParams: lambda_star must be >= 0");
        if (!(a0 >= 0.0)) throw std::invalid_argument("HawkesParams: a0 must be >= 0");
        PowerLawKernel{kernel.rho1, kernel.rho2, kernel.p};  // range check
    }
};

}  // namespace pdmv
