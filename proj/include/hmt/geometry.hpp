#pragma once

#include <cmath>
#include <vector>

#include "hmt/constants.hpp"
#include "hmt/quadrature.hpp"

namespace hmt {

/// Geodesic distance from the origin in the Poincare ball, ln((1+|x|)/(1-|x|)).
inline double geodesic_radius(double x_norm) {
    if (x_norm < 0 || x_norm >= 1)
        throw domain_error("geodesic_radius: |x| must lie in [0,1)");
    return std::log1p(x_norm) - std::log1p(-x_norm);
}

namespace detail {

// Power series of sinh(t)^m around 0: sinh(t)^m = t^m * sum_j c_j t^{2j}.
template <class Real>
std::vector<Real> sinh_power_series(int m, int terms) {
    // base series: sinh(t)/t = sum t^{2j}/(2j+1)!
    std::vector<Real> base(terms);
    Real fact = 1;
    for (int j = 0; j < terms; ++j) {
        base[j] = 1 / fact;
        fact *= Real(2 * j + 2) * Real(2 * j + 3);
    }
    std::vector<Real> out(terms, Real(0));
    out[0] = 1;
    for (int p = 0; p < m; ++p) {
        std::vector<Real> next(terms, Real(0));
        for (int i = 0; i < terms; ++i)
            for (int j = 0; i + j < terms; ++j) next[i + j] += out[i] * base[j];
        out = std::move(next);
    }
    return out;
}

// I_m(t) = int_0^t sinh(s)^m ds, by series for small t and the stable
// downward recurrence I_m = (sinh^{m-1} t cosh t - (m-1) I_{m-2}) / m otherwise.
template <class Real>
Real sinh_power_primitive(int m, Real t) {
    using std::cosh;
    using std::pow;
    using std::sinh;
    if (t == Real(0)) return Real(0);
    if (m == 0) return t;
    if (t <= Real(1)) {
        auto coeffs = sinh_power_series<Real>(m, 48);
        // integrate termwise: t^{m+2j+1}/(m+2j+1)
        Real t2 = t * t;
        Real tp = pow(t, m + 1);
        Real sum = 0;
        for (int j = 0; j < (int)coeffs.size(); ++j) {
            sum += coeffs[j] * tp / Real(m + 2 * j + 1);
            tp *= t2;
        }
        return sum;
    }
    Real s = sinh(t), c = cosh(t);
    if (m == 1) return c - 1;
    Real i_even = t, i_odd = c - 1;  // I_0, I_1
    Real sp = s;                     // sinh^{k-1}
    Real val = 0;
    for (int k = 2; k <= m; ++k) {
        Real& prev = (k % 2 == 0) ? i_even : i_odd;
        val = (sp * c - Real(k - 1) * prev) / Real(k);
        prev = val;
        sp *= s;
    }
    return val;
}

}  // namespace detail

/// Phi(r) = n * int_0^r sinh(t)^{n-1} dt; Vol_g(B_g(0,r)) = sigma_n * Phi(r).
template <class Real = double>
Real phi(const DimensionContext& ctx, Real r) {
    if (r < 0) throw domain_error("phi: r must be >= 0");
    if (ctx.n == 2) {
        // 2(cosh r - 1) written cancellation-free for tiny r
        using std::sinh;
        Real h = sinh(r / 2);
        return 4 * h * h;
    }
    return Real(ctx.n) * detail::sinh_power_primitive<Real>(ctx.n - 1, r);
}

/// Derivative of Phi: n * sinh(r)^{n-1}.
template <class Real = double>
Real phi_prime(const DimensionContext& ctx, Real r) {
    using std::pow;
    using std::sinh;
    return Real(ctx.n) * pow(sinh(r), ctx.n - 1);
}

/// Inverse of Phi, by geometric bracket growth then bisection-safeguarded
/// Newton iterations. tol_root is relative.
template <class Real = double>
Real phi_inv(const DimensionContext& ctx, Real s, Real tol_root = Real(1e-12)) {
    using std::abs;
    using std::acosh;
    if (s < 0) throw domain_error("phi_inv: s must be >= 0");
    if (s == Real(0)) return Real(0);
    if (ctx.n == 2) return acosh(s / 2 + 1);
    Real lo = 0, hi = 1;
    while (phi<Real>(ctx, hi) < s) {
        lo = hi;
        hi *= 2;
        if (hi > Real(1e4))
            throw quadrature_error("phi_inv: bracketing failed (s too large)");
    }
    Real t = (lo + hi) / 2;
    for (int it = 0; it < 200; ++it) {
        Real f = phi<Real>(ctx, t) - s;
        if (f > 0)
            hi = t;
        else
            lo = t;
        Real d = phi_prime<Real>(ctx, t);
        Real step = f / d;
        Real next = t - step;
        if (!(next > lo && next < hi)) next = (lo + hi) / 2;
        Real diff = abs(next - t);
        t = next;
        if (diff <= tol_root * (Real(1) + abs(t))) {
            // polish once
            t = t - (phi<Real>(ctx, t) - s) / phi_prime<Real>(ctx, t);
            if (t < lo || !(t == t)) t = (lo + hi) / 2;
            return t;
        }
    }
    throw quadrature_error("phi_inv: Newton iteration did not converge");
}

/// k(s) = (sinh Phi^{-1}(s))^{n(n-1)} - s^{n-1}, the kernel of the
/// hyperbolic-minus-Euclidean energy gap (s in Phi units).
template <class Real = double>
Real k_kernel(const DimensionContext& ctx, Real s) {
    using std::pow;
    using std::sinh;
    if (s < 0) throw domain_error("k_kernel: s must be >= 0");
    if (s == Real(0)) return Real(0);
    Real t = phi_inv<Real>(ctx, s);
    Real k = pow(sinh(t), ctx.n * (ctx.n - 1)) - pow(s, ctx.n - 1);
    if constexpr (std::is_same_v<Real, double>) {
        // near 0 the two terms agree to leading order; re-evaluate in
        // extended precision when the cancellation eats most of the digits
        if (k < 1e-3 * pow(s, ctx.n - 1)) {
            ext_real ts = phi_inv<ext_real>(ctx, ext_real(s), ext_real(1e-45));
            ext_real ks = pow(sinh(ts), ctx.n * (ctx.n - 1)) -
                          pow(ext_real(s), ctx.n - 1);
            return static_cast<double>(ks);
        }
    }
    return k;
}

/// omega_{n-1} * int_0^{t_max} f(t) sinh(t)^{n-1} dt by adaptive quadrature.
template <class F>
double polar_integral(const DimensionContext& ctx, const F& f, double t_max,
                      double tol_quad = 1e-12, double* err = nullptr) {
    const int m = ctx.n - 1;
    auto g = [&](double t) { return f(t) * std::pow(std::sinh(t), m); };
    return ctx.omega * integrate<double>(g, 0.0, t_max, tol_quad, err);
}

}  // namespace hmt
