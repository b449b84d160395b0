#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hmt/constants.hpp"
#include "hmt/geometry.hpp"

namespace hmt {

/// Non-increasing rearrangement profile v = u* on the measure half-line:
/// piecewise linear between strictly increasing knots s_0 = 0 < ... < s_m,
/// values v_0 >= ... >= v_m = 0, identically zero beyond s_m.
struct RadialProfile {
    std::vector<double> knots;
    std::vector<double> values;

    double support() const { return knots.back(); }
    std::size_t segments() const { return knots.size() - 1; }

    double operator()(double s) const {
        if (s <= 0) return values.front();
        if (s >= knots.back()) return 0.0;
        auto it = std::upper_bound(knots.begin(), knots.end(), s);
        std::size_t i = (it - knots.begin()) - 1;
        double h = knots[i + 1] - knots[i];
        double w = (s - knots[i]) / h;
        return values[i] + w * (values[i + 1] - values[i]);
    }

    double slope(std::size_t seg) const {
        return (values[seg + 1] - values[seg]) / (knots[seg + 1] - knots[seg]);
    }
};

/// A radial function on H^n given by geodesic-radius knots, piecewise linear
/// in t, non-increasing, compactly supported.
struct HyperbolicRadialFunction {
    std::vector<double> radius_knots;
    std::vector<double> values;
};

/// Radial function on R^n, same structure in the Euclidean radius.
struct EuclideanRadialFunction {
    std::vector<double> radius_knots;
    std::vector<double> values;
};

namespace detail {

inline void check_monotone(const std::vector<double>& knots,
                           const std::vector<double>& values, const char* who) {
    if (knots.size() < 2 || knots.size() != values.size())
        throw domain_error(std::string(who) + ": need matching knots/values, >= 2");
    if (knots.front() != 0)
        throw domain_error(std::string(who) + ": first knot must be 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i] > knots[i - 1]))
            throw domain_error(std::string(who) + ": knots must be strictly increasing");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0))
            throw domain_error(std::string(who) + ": values must be >= 0");
        if (i > 0 && values[i] > values[i - 1])
            throw domain_error(std::string(who) + ": values must be non-increasing");
    }
    if (values.back() != 0)
        throw domain_error(std::string(who) + ": final value must be 0 (compact support)");
}

}  // namespace detail

inline void validate(const RadialProfile& v) {
    detail::check_monotone(v.knots, v.values, "RadialProfile");
}

inline void validate(const HyperbolicRadialFunction& u) {
    detail::check_monotone(u.radius_knots, u.values, "HyperbolicRadialFunction");
}

/// Rearrangement profile of a radial non-increasing u on H^n: for such u the
/// map is the coordinate change s_i = sigma_n * Phi(t_i) with values kept.
inline RadialProfile profile_from_hyperbolic(const DimensionContext& ctx,
                                             const HyperbolicRadialFunction& u) {
    validate(u);
    RadialProfile v;
    v.knots.reserve(u.radius_knots.size());
    for (double t : u.radius_knots) v.knots.push_back(ctx.sigma * phi(ctx, t));
    v.values = u.values;
    validate(v);
    return v;
}

/// Inverse knot map of profile_from_hyperbolic: t_i = Phi^{-1}(s_i / sigma_n).
inline HyperbolicRadialFunction hyperbolic_realization(const DimensionContext& ctx,
                                                       const RadialProfile& v) {
    validate(v);
    HyperbolicRadialFunction u;
    u.radius_knots.reserve(v.knots.size());
    for (double s : v.knots) u.radius_knots.push_back(phi_inv(ctx, s / ctx.sigma));
    u.values = v.values;
    return u;
}

/// u_e(x) = v(sigma_n |x|^n): radius knots r_i = (s_i / sigma_n)^{1/n}.
inline EuclideanRadialFunction euclidean_realization(const DimensionContext& ctx,
                                                     const RadialProfile& v) {
    validate(v);
    EuclideanRadialFunction u;
    u.radius_knots.reserve(v.knots.size());
    for (double s : v.knots)
        u.radius_knots.push_back(std::pow(s / ctx.sigma, 1.0 / ctx.n));
    u.values = v.values;
    return u;
}

/// mu(level) = sup{ s : v(s) > level }; 0 once level >= v(0).
inline double distribution_function(const RadialProfile& v, double level) {
    if (!(level > 0)) throw domain_error("distribution_function: level must be > 0");
    if (level >= v.values.front()) return 0.0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        if (v.values[i + 1] <= level) {
            // crossing inside segment i (v_i > level >= v_{i+1})
            double h = v.knots[i + 1] - v.knots[i];
            return v.knots[i] + h * (v.values[i] - level) / (v.values[i] - v.values[i + 1]);
        }
    }
    return v.support();
}

/// w(s) = v(s) * s^{1/n}, with the per-segment derivative
/// w'(s) = v'(s) s^{1/n} + v(s) s^{1/n - 1} / n (smooth inside segments).
struct WTransform {
    const RadialProfile* v;
    int n;

    double operator()(double s) const {
        if (s <= 0) return 0.0;
        return (*v)(s)*std::pow(s, 1.0 / n);
    }

    double derivative(double s, std::size_t seg) const {
        double m = v->slope(seg);
        double vs = v->values[seg] + m * (s - v->knots[seg]);
        return m * std::pow(s, 1.0 / n) + vs * std::pow(s, 1.0 / n - 1) / n;
    }
};

inline WTransform w_transform(const RadialProfile& v, int n) {
    return WTransform{&v, n};
}

/// Seeded generator of valid random profiles: sorted uniform knots on
/// (0, support], sorted uniform values descending to 0.
inline RadialProfile random_profile(std::uint64_t seed, int n_knots, double support,
                                    double max_value) {
    if (n_knots < 2 || !(support > 0) || !(max_value > 0))
        throw domain_error("random_profile: invalid parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RadialProfile v;
    v.knots.resize(n_knots);
    v.values.resize(n_knots);
    v.knots[0] = 0.0;
    v.knots[n_knots - 1] = support;
    for (int i = 1; i < n_knots - 1; ++i) v.knots[i] = support * uni(rng);
    std::sort(v.knots.begin(), v.knots.end());
    for (int i = 1; i < n_knots; ++i)
        if (v.knots[i] <= v.knots[i - 1])
            v.knots[i] = std::nextafter(v.knots[i - 1], 2 * support) + support * 1e-12;
    v.knots[n_knots - 1] = std::max(v.knots[n_knots - 1], support);
    v.values[n_knots - 1] = 0.0;
    for (int i = 0; i < n_knots - 1; ++i) v.values[i] = max_value * uni(rng);
    std::sort(v.values.begin(), v.values.end() - 1, std::greater<double>());
    validate(v);
    return v;
}

}  // namespace hmt
