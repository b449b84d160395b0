#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "hmt/constants.hpp"
#include "hmt/functionals.hpp"
#include "hmt/geometry.hpp"
#include "hmt/profile.hpp"
#include "hmt/quadrature.hpp"

namespace hmt {

/// Beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b) via log-gamma,
/// stable down to very small a.
template <class Real = double>
Real beta(Real a, Real b) {
    using std::exp;
    using boost::math::lgamma;
    if (!(a > 0) || !(b > 0)) throw domain_error("beta: arguments must be > 0");
    return exp(lgamma(a) + lgamma(b) - lgamma(a + b));
}

/// Closed forms for the lower-bound family psi_k(x) = (1-|x|^2)^{(n-1)/n + 1/(nk)}
/// and its constraint normalization a_k.
struct PsiKRecord {
    int k = 0;
    double lambda = 0;
    double ln_norm_closed = 0;  // omega 2^{n-1} B(1/k, n/2)
    double energy_closed = 0;   // omega 2^{n-1} ((n-1)/n + 1/(nk))^n B(1/k, n)
    double a_k_n = 0;           // a_k^n
    double product = 0;         // a_k^n * ln_norm_closed
    double limit_target = 0;    // 1 / (hardy - lambda)
};

inline PsiKRecord psi_k_closed_forms(const DimensionContext& ctx, long long k,
                                     double lambda) {
    if (k < 1) throw domain_error("psi_k_closed_forms: k must be >= 1");
    if (!(lambda >= 0) || lambda >= ctx.hardy)
        throw domain_error("psi_k_closed_forms: lambda must lie in [0, hardy)");
    const int n = ctx.n;
    PsiKRecord r;
    r.k = static_cast<int>(std::min<long long>(k, std::numeric_limits<int>::max()));
    r.lambda = lambda;
    double inv_k = 1.0 / k;
    double expo = double(n - 1) / n + inv_k / n;
    double pref = ctx.omega * std::pow(2.0, n - 1);
    double b_half = beta(inv_k, n / 2.0);
    double b_full = beta(inv_k, double(n));
    r.ln_norm_closed = pref * b_half;
    r.energy_closed = pref * std::pow(expo, n) * b_full;
    r.a_k_n = 1.0 / (pref * (std::pow(expo, n) * b_full - lambda * b_half));
    r.product = 1.0 / (std::pow(expo, n) * b_full / b_half - lambda);
    r.limit_target = 1.0 / (ctx.hardy - lambda);
    return r;
}

namespace detail {

// int_0^1 (1-r^2)^{-1+1/k} r^{2b-1} dr by quadrature. The mass concentrates
// at r = 1 like the k-th root of the distance, so direct panels in r cannot
// reach it; the exact substitutions 1 - r^2 = z^k and then z = 1 - y^2 give
// the analytic integrand k (1 - (1-y^2)^k)^{b-1} y.
inline double psi_radial_integral(int k, double b, double tol_quad) {
    auto f = [&](double y) {
        double zk = std::pow(1.0 - y * y, k);
        return std::pow(1.0 - zk, b - 1.0) * y;
    };
    return k * integrate<double>(f, 0.0, 1.0, tol_quad);
}

}  // namespace detail

/// Quadrature cross-check of the psi_k L^n-norm closed form.
inline double psi_k_ln_norm_quadrature(const DimensionContext& ctx, int k,
                                       double tol_quad = 1e-12) {
    const int n = ctx.n;
    double integral = detail::psi_radial_integral(k, n / 2.0, tol_quad);
    return ctx.omega * std::pow(2.0, n) * integral;
}

/// Quadrature cross-check of the psi_k Dirichlet-energy closed form.
inline double psi_k_energy_quadrature(const DimensionContext& ctx, int k,
                                      double tol_quad = 1e-12) {
    const int n = ctx.n;
    double expo = double(n - 1) / n + 1.0 / (n * k);
    double integral = detail::psi_radial_integral(k, double(n), tol_quad);
    return ctx.omega * std::pow(2.0, n) * std::pow(expo, n) * integral;
}

/// Lower bound alpha_n^{n-1} / (n-1)! * (hardy - lambda)^{-1} for the
/// constrained Moser-Trudinger supremum; increasing in lambda.
inline double lower_bound(const DimensionContext& ctx, double lambda) {
    if (!(lambda >= 0) || lambda >= ctx.hardy)
        throw domain_error("lower_bound: lambda must lie in [0, hardy)");
    double fact = 1;
    for (int j = 2; j <= ctx.n - 1; ++j) fact *= j;
    return std::pow(ctx.alpha, ctx.n - 1) / fact / (ctx.hardy - lambda);
}

/// The concentrating sequence u_k of the sharpness argument:
/// u_k = omega^{-1/n} C_k * { k^{(n-1)/n} on rho < e^-k;
///                            k^{(n-1)/n} (-ln rho)/k on e^-k <= rho < 1; 0 }.
struct MoserSequence {
    int k = 0;
    double C_k = 0;
    double plateau = 0;          // value of u_k on the inner ball
    double I_dirichlet = 0;      // (1/k) int_{e^-k}^1 t^-n sinh^{n-1} t dt
    double I_core = 0;           // k^{n-1} int_0^{e^-k} sinh^{n-1} t dt
    double I_log = 0;            // (1/k) int_{e^-k}^1 (-ln t)^n sinh^{n-1} t dt
    double ln_norm = 0;          // ||u_k||_{n,g}^n
    double energy = 0;           // ||grad u_k||_{n,g}^n
};

/// Value of the pre-factorized shape at geodesic radius t (without the
/// omega^{-1/n} C_k k^{(n-1)/n} amplitude): min(1, -ln t / k) for t < 1.
inline double moser_shape(int k, double t) {
    if (t >= 1) return 0;
    if (t <= std::exp(-double(k))) return 1;
    return -std::log(t) / k;
}

inline MoserSequence moser_C_k(const DimensionContext& ctx, int k,
                               double tol_quad = 1e-12) {
    if (k < 2) throw domain_error("moser_C_k: k must be >= 2");
    const int n = ctx.n;
    const double ek = std::exp(-double(k));
    MoserSequence m;
    m.k = k;

    // (1/k) int_{e^-k}^1 t^-n sinh^{n-1} t dt: integrand ~ 1/t near 0,
    // integrate in tau = -ln t where it is mild.
    auto f1 = [&](double tau) {
        double t = std::exp(-tau);
        return std::pow(t, 1 - n) * std::pow(std::sinh(t), n - 1);
    };
    m.I_dirichlet = integrate<double>(f1, 0.0, double(k), tol_quad) / k;

    m.I_core = std::pow(double(k), n - 1) * phi(ctx, ek) / n;

    auto f3 = [&](double tau) {
        double t = std::exp(-tau);
        return std::pow(tau, n) * std::pow(std::sinh(t), n - 1) * t;
    };
    m.I_log = integrate<double>(f3, 0.0, double(k), tol_quad) / k;

    double paren = m.I_dirichlet - ctx.hardy * (m.I_core + m.I_log);
    if (!(paren > 0)) throw quadrature_error("moser_C_k: normalization not positive");
    m.C_k = std::pow(paren, -1.0 / n);
    double ckn = std::pow(m.C_k, n);
    m.plateau = std::pow(ctx.omega, -1.0 / n) * m.C_k * std::pow(double(k), double(n - 1) / n);
    m.energy = ckn * m.I_dirichlet;
    m.ln_norm = ckn * (m.I_core + m.I_log);
    return m;
}

/// Piecewise-linear sampling of u_k on a log-spaced geodesic-radius grid,
/// for feeding u_k through the profile machinery.
inline HyperbolicRadialFunction moser_profile(const DimensionContext& ctx, int k,
                                              int points_per_decade = 16) {
    MoserSequence m = moser_C_k(ctx, k);
    HyperbolicRadialFunction u;
    const double ek = std::exp(-double(k));
    int decades = static_cast<int>(std::ceil(-std::log10(ek)));
    int count = std::max(2, decades * points_per_decade);
    u.radius_knots.push_back(0);
    u.values.push_back(m.plateau);
    for (int i = 0; i <= count; ++i) {
        double t = ek * std::pow(1.0 / ek, double(i) / count);
        u.radius_knots.push_back(t);
        u.values.push_back(m.plateau * moser_shape(k, t));
    }
    u.values.back() = 0;
    return u;
}

struct MoserKRecord {
    int k = 0;
    double C_k = 0;
    double alpha = 0;
    double p = 0;
    double ln_norm = 0;
    double ratio = 0;
    bool diverged = false;
};

/// Exact-growth ratio of u_k at exponent alpha and denominator power p,
/// by polar-coordinate quadrature of the exact piecewise u_k. Evaluated in
/// log-space per panel so exponents beyond double range classify cleanly
/// as "diverged" rather than overflowing.
inline MoserKRecord blowup_ratio(const DimensionContext& ctx, int k, double alpha,
                                 double p, double tol_quad = 1e-10) {
    if (!(alpha > 0) || p < 0) throw domain_error("blowup_ratio: bad alpha or p");
    MoserSequence m = moser_C_k(ctx, k);
    MoserKRecord rec;
    rec.k = k;
    rec.C_k = m.C_k;
    rec.alpha = alpha;
    rec.p = p;
    rec.ln_norm = m.ln_norm;

    const int n = ctx.n;
    const double q = double(n) / (n - 1);
    const double ek = std::exp(-double(k));
    const double arg_plateau = alpha * std::pow(m.plateau, q);

    // inner ball: constant integrand
    double log_inner = log_phi_n(n, arg_plateau) - p * std::log1p(m.plateau) +
                       std::log(ctx.omega * phi(ctx, ek) / n);

    // annulus: tau = -ln t, u = plateau * tau / k, tau in (0, k)
    auto log_f = [&](double tau) {
        double t = std::exp(-tau);
        double u = m.plateau * tau / k;
        return log_phi_n(n, alpha * std::pow(u, q)) - p * std::log1p(u) - tau +
               (n - 1) * std::log(std::sinh(t));
    };
    // peak of the exponent is at an endpoint or interior; scan coarsely
    double log_max = log_inner;
    const int scan = 512;
    for (int i = 1; i < scan; ++i) {
        double tau = double(k) * i / scan;
        log_max = std::max(log_max, log_f(tau));
    }
    auto f_scaled = [&](double tau) { return std::exp(log_f(tau) - log_max); };
    double integral_scaled = integrate<double>(f_scaled, 1e-12, double(k), tol_quad);
    double total_scaled = ctx.omega * integral_scaled + std::exp(log_inner - log_max);

    double log_ratio = log_max + std::log(total_scaled) - std::log(m.ln_norm);
    if (log_ratio > std::log(1e12)) {
        rec.diverged = true;
        rec.ratio = std::numeric_limits<double>::infinity();
    } else {
        rec.ratio = std::exp(log_ratio);
    }
    return rec;
}

}  // namespace hmt
