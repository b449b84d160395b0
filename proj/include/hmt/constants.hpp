#pragma once

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hmt {

// Software extended precision for near-cancellation regimes.
using ext_real = boost::multiprecision::cpp_bin_float_50;
using ext_real_100 = boost::multiprecision::cpp_bin_float_100;

template <class Real>
Real pi_v() {
    return boost::math::constants::pi<Real>();
}

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Dimension n and the constants every formula in the library shares:
/// omega  = surface area of the unit sphere in R^n,
/// sigma  = volume of the unit ball, omega / n,
/// alpha  = sharp Moser exponent n * omega^{1/(n-1)},
/// hardy  = sharp Hardy constant ((n-1)/n)^n.
struct DimensionContext {
    int n = 0;
    double omega = 0;
    double sigma = 0;
    double alpha = 0;
    double hardy = 0;
};

template <class Real>
Real sphere_surface_area(int n) {
    // omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)
    Real half_n = Real(n) / 2;
    using std::exp;
    using std::log;
    using boost::math::lgamma;
    return 2 * exp(half_n * log(pi_v<Real>()) - lgamma(half_n));
}

inline DimensionContext make_context(int n) {
    if (n < 2) throw domain_error("make_context: dimension must be >= 2");
    DimensionContext ctx;
    ctx.n = n;
    ctx.omega = sphere_surface_area<double>(n);
    ctx.sigma = ctx.omega / n;
    ctx.alpha = n * std::pow(ctx.omega, 1.0 / (n - 1));
    ctx.hardy = std::pow(double(n - 1) / n, n);
    return ctx;
}

}  // namespace hmt
