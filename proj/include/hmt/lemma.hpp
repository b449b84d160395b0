#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hmt/constants.hpp"
#include "hmt/functionals.hpp"
#include "hmt/geometry.hpp"
#include "hmt/profile.hpp"

namespace hmt {

/// One inequality check: pass iff slack = lhs - rhs >= -tolerance.
struct InequalityCheckResult {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    double tolerance = 0;
    bool pass = false;
    std::string context;
};

inline InequalityCheckResult make_check(std::string name, double lhs, double rhs,
                                        double tolerance, std::string context = {}) {
    InequalityCheckResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = lhs - rhs;
    r.tolerance = tolerance;
    r.pass = r.slack >= -tolerance;
    r.context = std::move(context);
    return r;
}

template <class Real>
Real hardy_constant(int n) {
    using std::pow;
    return pow(Real(n - 1) / Real(n), n);
}

/// F(t) = sinh(t)^{n(n-1)} - Phi(t)^{n-1} - ((n-1)/n)^n Phi(t)^n.
/// Nonnegative for all t (identically zero when n = 2).
template <class Real = double>
Real lemma_F(const DimensionContext& ctx, Real t) {
    using std::pow;
    using std::sinh;
    const int n = ctx.n;
    Real P = phi<Real>(ctx, t);
    return pow(sinh(t), n * (n - 1)) - pow(P, n - 1) - hardy_constant<Real>(n) * pow(P, n);
}

/// G(t) from F'(t) = n(n-1) sinh(t)^{n-1} G(t); defined for n >= 3.
template <class Real = double>
Real lemma_G(const DimensionContext& ctx, Real t) {
    using std::cosh;
    using std::pow;
    using std::sinh;
    const int n = ctx.n;
    if (n < 3) throw domain_error("lemma_G: defined for n >= 3 only");
    Real P = phi<Real>(ctx, t);
    return pow(sinh(t), n * (n - 2)) * cosh(t) - pow(P, n - 2) -
           pow(Real(n - 1) / n, n - 1) * pow(P, n - 1);
}

/// H(t) from G'(t) = (n-1)^2 sinh(t)^{n-1} H(t); defined for n >= 3.
template <class Real = double>
Real lemma_H(const DimensionContext& ctx, Real t) {
    using std::pow;
    using std::sinh;
    const int n = ctx.n;
    if (n < 3) throw domain_error("lemma_H: defined for n >= 3 only");
    Real P = phi<Real>(ctx, t);
    Real s = sinh(t);
    return pow(s, (n - 1) * (n - 2)) +
           Real(n * (n - 2)) / Real((n - 1) * (n - 1)) * (pow(s, n * (n - 3)) - pow(P, n - 3)) -
           pow(Real(n - 1) / n, n - 2) * pow(P, n - 2);
}

struct GridSpec {
    double t_min = 1e-6;
    double t_max = 20.0;
    int count = 10000;
    bool log_spacing = true;

    double point(int i) const {
        if (count < 2) throw domain_error("GridSpec: count must be >= 2");
        double w = double(i) / (count - 1);
        if (log_spacing)
            return t_min * std::pow(t_max / t_min, w);
        return t_min + w * (t_max - t_min);
    }
};

struct LemmaSweepReport {
    int n = 0;
    GridSpec grid;
    double min_F = std::numeric_limits<double>::infinity();
    double argmin_F = 0;
    double min_G = std::numeric_limits<double>::infinity();
    double min_H = std::numeric_limits<double>::infinity();
    // n = 2 only: max |F(t)| / max(1, sinh(t)^2) over the grid
    double equality_deviation = 0;
    // smallest F relative to the leading magnitude (cancellation exposure)
    double min_F_relative = std::numeric_limits<double>::infinity();
};

namespace detail {

// F with automatic precision escalation: when the double evaluation is
// dominated by cancellation (or overflows), redo it with 50 then 100 digits.
inline double lemma_F_auto(const DimensionContext& ctx, double t, double* magnitude) {
    const int n = ctx.n;
    double mag = std::pow(std::sinh(t), n * (n - 1));
    double f = std::isfinite(mag) ? lemma_F<double>(ctx, t)
                                  : std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(mag) || t > 10 || std::fabs(f) < 1e-12 * mag) {
        ext_real fe = lemma_F<ext_real>(ctx, ext_real(t));
        ext_real me = boost::multiprecision::pow(ext_real(std::sinh(t)), n * (n - 1));
        if (boost::multiprecision::abs(fe) < ext_real(1e-44) * me)
            fe = static_cast<ext_real>(lemma_F<ext_real_100>(ctx, ext_real_100(t)));
        f = static_cast<double>(fe);
        mag = std::isfinite(mag) ? mag : static_cast<double>(me);
    }
    if (magnitude) *magnitude = mag;
    return f;
}

}  // namespace detail

inline LemmaSweepReport sweep_lemma(const DimensionContext& ctx, const GridSpec& grid) {
    LemmaSweepReport rep;
    rep.n = ctx.n;
    rep.grid = grid;
    rep.min_G = rep.min_H = std::numeric_limits<double>::infinity();
    double max_dev = 0;
    for (int i = 0; i < grid.count; ++i) {
        double t = grid.point(i);
        double mag = 0;
        double F = detail::lemma_F_auto(ctx, t, &mag);
        if (F < rep.min_F) {
            rep.min_F = F;
            rep.argmin_F = t;
        }
        if (mag > 0) {
            double rel = F / mag;
            if (rel < rep.min_F_relative) rep.min_F_relative = rel;
        }
        if (ctx.n == 2) {
            double sinh2 = std::pow(std::sinh(t), 2);
            double dev = std::fabs(F) / std::max(1.0, sinh2);
            max_dev = std::max(max_dev, dev);
        } else {
            bool need_ext = t > 10 || !std::isfinite(std::pow(std::sinh(t), ctx.n * (ctx.n - 2) + 1));
            double G, H;
            if (need_ext) {
                G = static_cast<double>(lemma_G<ext_real>(ctx, ext_real(t)));
                H = static_cast<double>(lemma_H<ext_real>(ctx, ext_real(t)));
            } else {
                G = lemma_G<double>(ctx, t);
                H = lemma_H<double>(ctx, t);
            }
            rep.min_G = std::min(rep.min_G, G);
            rep.min_H = std::min(rep.min_H, H);
        }
    }
    rep.equality_deviation = max_dev;
    return rep;
}

/// Energy comparison: hyperbolic energy minus the Hardy term dominates the
/// Euclidean energy (weak form), plus the extra term (strong form).
inline InequalityCheckResult check_comparison(const DimensionContext& ctx,
                                              const RadialProfile& v, bool strong,
                                              double tol_quad = 1e-12) {
    double hyp = hyperbolic_energy(ctx, v, tol_quad);
    double lnn = ln_norm(v, ctx.n);
    double lhs = hyp - ctx.hardy * lnn;
    double rhs = euclidean_energy(ctx, v);
    if (strong) rhs += extra_term(ctx, v, tol_quad);
    double tol = 1e-8 * (1 + std::fabs(lhs));
    return make_check(strong ? "comparison_strong" : "comparison_weak", lhs, rhs, tol,
                      "n=" + std::to_string(ctx.n));
}

/// Constraint quantity ||grad u||^n - lambda ||u||^n of the shifted
/// functional, for lambda in [0, hardy].
inline double check_constraint_norm(const DimensionContext& ctx, const RadialProfile& v,
                                    double lambda, double tol_quad = 1e-12) {
    if (lambda < 0 || lambda > ctx.hardy)
        throw domain_error("check_constraint_norm: lambda must lie in [0, hardy]");
    return hyperbolic_energy(ctx, v, tol_quad) - lambda * ln_norm(v, ctx.n);
}

/// Scale v so the constraint quantity equals 1 (degree-n homogeneity).
inline RadialProfile normalize_to_constraint(const DimensionContext& ctx,
                                             RadialProfile v, double lambda) {
    double q = check_constraint_norm(ctx, v, lambda);
    if (!(q > 0)) throw domain_error("normalize_to_constraint: constraint not positive");
    double scale = std::pow(q, -1.0 / ctx.n);
    for (double& x : v.values) x *= scale;
    return v;
}

/// |a-b|^n - |a|^n - |b|^n + n a b^{n-1}, nonnegative when a <= b and b >= 0.
inline double elementary_inequality_slack(double a, double b, int n) {
    return std::pow(std::fabs(a - b), n) - std::pow(std::fabs(a), n) -
           std::pow(std::fabs(b), n) + n * a * std::pow(b, n - 1);
}

}  // namespace hmt
