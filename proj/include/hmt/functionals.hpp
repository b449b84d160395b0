#pragma once

#include <cmath>
#include <limits>

#include "hmt/constants.hpp"
#include "hmt/geometry.hpp"
#include "hmt/profile.hpp"
#include "hmt/quadrature.hpp"

namespace hmt {

struct blowup_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated exponential Phi_n(t) = e^t - sum_{j<=n-2} t^j / j!.
/// Summed from the j = n-1 term up; all terms positive, no cancellation.
inline double phi_n(int n, double t) {
    if (t < 0) throw domain_error("phi_n: t must be >= 0");
    if (t > 700) throw blowup_error("phi_n: argument overflows double range");
    double term = 1.0;
    for (int j = 1; j <= n - 1; ++j) term *= t / j;
    double sum = 0.0;
    int j = n - 1;
    while (true) {
        sum += term;
        ++j;
        term *= t / j;
        if (term < sum * 1e-18 + 1e-300) break;
    }
    return sum;
}

/// log(Phi_n(t)), valid for all t >= 0 including far beyond double range.
inline double log_phi_n(int n, double t) {
    if (t <= 650) return std::log(phi_n(n, t));
    // the dropped polynomial is negligible against e^t here
    return t;
}

namespace detail {

// int_a^b |v0 + m (s - a)|^p ds for the linear segment, p = n (exact for
// integer n via the antiderivative of the linear function's power).
inline double segment_power_integral(double a, double b, double va, double vb, int n) {
    double h = b - a;
    if (va == vb) return h * std::pow(va, n);
    // (vb^{n+1} - va^{n+1}) / ((n+1) (vb - va) / h)
    return h * (std::pow(vb, n + 1) - std::pow(va, n + 1)) / ((n + 1) * (vb - va));
}

}  // namespace detail

/// ||u||_n^n in H^n = int_0^inf v(s)^n ds, exact per segment.
inline double ln_norm(const RadialProfile& v, int n) {
    double total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i)
        total += detail::segment_power_integral(v.knots[i], v.knots[i + 1], v.values[i],
                                                v.values[i + 1], n);
    return total;
}

/// Euclidean Dirichlet n-energy of the realization u_e:
/// (n sigma)^n int |v'(s)|^n (s/sigma)^{n-1} ds, exact per segment.
inline double euclidean_energy(const DimensionContext& ctx, const RadialProfile& v) {
    const int n = ctx.n;
    double pref = std::pow(n * ctx.sigma, n) * std::pow(ctx.sigma, 1 - n);
    double total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        double m = std::fabs(v.slope(i));
        if (m == 0) continue;
        double a = v.knots[i], b = v.knots[i + 1];
        total += std::pow(m, n) * (std::pow(b, n) - std::pow(a, n)) / n;
    }
    return pref * total;
}

/// Hyperbolic Dirichlet n-energy, measure-coordinate route:
/// (n sigma)^n int |v'(s)|^n (sinh Phi^{-1}(s/sigma))^{n(n-1)} ds.
inline double hyperbolic_energy_measure_route(const DimensionContext& ctx,
                                              const RadialProfile& v,
                                              double tol_quad = 1e-12,
                                              double* err = nullptr) {
    const int n = ctx.n;
    const int p = n * (n - 1);
    double pref = std::pow(n * ctx.sigma, n);
    double total = 0, err_total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        double m = std::fabs(v.slope(i));
        if (m == 0) continue;
        auto f = [&](double s) {
            return std::pow(std::sinh(phi_inv(ctx, s / ctx.sigma)), p);
        };
        double e = 0;
        total += std::pow(m, n) *
                 integrate<double>(f, v.knots[i], v.knots[i + 1], tol_quad, &e);
        err_total += std::pow(m, n) * e;
    }
    if (err) *err = pref * err_total;
    return pref * total;
}

/// Hyperbolic Dirichlet n-energy, polar-coordinate route: substitute
/// s = sigma Phi(t) and integrate in t between the mapped knots.
inline double hyperbolic_energy(const DimensionContext& ctx, const RadialProfile& v,
                                double tol_quad = 1e-12, double* err = nullptr) {
    const int n = ctx.n;
    const int p = n * (n - 1) + (n - 1);  // sinh^{n(n-1)} * Jacobian sinh^{n-1}
    double pref = std::pow(n * ctx.sigma, n) * ctx.sigma * n;
    double total = 0, err_total = 0;
    double t_lo = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        double t_hi = phi_inv(ctx, v.knots[i + 1] / ctx.sigma);
        double m = std::fabs(v.slope(i));
        if (m != 0) {
            auto f = [&](double t) { return std::pow(std::sinh(t), p); };
            double e = 0;
            total += std::pow(m, n) * integrate<double>(f, t_lo, t_hi, tol_quad, &e);
            err_total += std::pow(m, n) * e;
        }
        t_lo = t_hi;
    }
    if (err) *err = pref * err_total;
    return pref * total;
}

/// Moser-Trudinger integrand in layer-cake form:
/// int_0^inf Phi_n(alpha v(s)^{n/(n-1)}) ds.
inline double mt_functional(const DimensionContext& ctx, const RadialProfile& v,
                            double alpha, double tol_quad = 1e-12,
                            double* err = nullptr) {
    if (!(alpha > 0)) throw domain_error("mt_functional: alpha must be > 0");
    const int n = ctx.n;
    const double q = double(n) / (n - 1);
    if (alpha * std::pow(v.values.front(), q) > 700)
        throw blowup_error("mt_functional: integrand overflows (blow-up regime)");
    double total = 0, err_total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        auto f = [&](double s) {
            double m = v.slope(i);
            double vs = v.values[i] + m * (s - v.knots[i]);
            return phi_n(n, alpha * std::pow(vs, q));
        };
        double e = 0;
        total += integrate<double>(f, v.knots[i], v.knots[i + 1], tol_quad, &e);
        err_total += e;
    }
    if (err) *err = err_total;
    return total;
}

/// Exact-growth functional: layer-cake integral of
/// Phi_n(alpha v^{n/(n-1)}) / (1+v)^p, divided by ||v||_n^n.
/// p defaults to the critical power n/(n-1).
inline double exact_growth_ratio(const DimensionContext& ctx, const RadialProfile& v,
                                 double alpha, double p = -1,
                                 double tol_quad = 1e-12) {
    const int n = ctx.n;
    const double q = double(n) / (n - 1);
    if (p < 0) p = q;
    double norm = ln_norm(v, n);
    if (norm == 0)
        throw domain_error("exact_growth_ratio: profile is identically zero");
    if (alpha * std::pow(v.values.front(), q) > 700)
        throw blowup_error("exact_growth_ratio: integrand overflows");
    double total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        auto f = [&](double s) {
            double m = v.slope(i);
            double vs = v.values[i] + m * (s - v.knots[i]);
            return phi_n(n, alpha * std::pow(vs, q)) / std::pow(1 + vs, p);
        };
        total += integrate<double>(f, v.knots[i], v.knots[i + 1], tol_quad);
    }
    return total / norm;
}

/// Strengthening extra term (n-1)^n int |(v(s) s^{1/n})'|^n s^{n-1} ds.
/// The integrand is bounded near s = 0 but has a singular derivative; the
/// first segment uses panels graded toward 0 down to 1e-12 * support.
inline double extra_term(const DimensionContext& ctx, const RadialProfile& v,
                         double tol_quad = 1e-12, double* err = nullptr) {
    const int n = ctx.n;
    WTransform w = w_transform(v, n);
    double total = 0, err_total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        auto f = [&](double s) {
            return std::pow(std::fabs(w.derivative(s, i)), n) * std::pow(s, n - 1);
        };
        double e = 0;
        if (v.knots[i] == 0) {
            total += integrate_graded_left<double>(f, 0.0, v.knots[i + 1],
                                                   1e-12 * v.support(), tol_quad, &e);
        } else {
            total += integrate<double>(f, v.knots[i], v.knots[i + 1], tol_quad, &e);
        }
        err_total += e;
    }
    if (err) *err = err_total;
    return std::pow(n - 1, n) * total;
}

/// All scalar functionals of a profile in one record.
struct EnergyReport {
    double hyperbolic_energy = 0;
    double euclidean_energy = 0;
    double ln_norm = 0;
    double extra_term = 0;
    double quad_error_estimate = 0;
};

inline EnergyReport energy_report(const DimensionContext& ctx, const RadialProfile& v,
                                  double tol_quad = 1e-12) {
    EnergyReport r;
    double e1 = 0, e2 = 0;
    r.hyperbolic_energy = hyperbolic_energy(ctx, v, tol_quad, &e1);
    r.euclidean_energy = euclidean_energy(ctx, v);
    r.ln_norm = ln_norm(v, ctx.n);
    r.extra_term = extra_term(ctx, v, tol_quad, &e2);
    r.quad_error_estimate = e1 + e2;
    return r;
}

}  // namespace hmt
