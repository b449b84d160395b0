#pragma once

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hmt {

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadResult {
    double value = 0;
    double error_estimate = 0;
};

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1,1], 40 significant digits so the
// same table serves double and the extended-precision type.
inline constexpr const char* gl15_nodes[15] = {
    "-0.987992518020485428489565718586612581147",
    "-0.937273392400705904307758947710209471244",
    "-0.8482065834104272162006483207742168513663",
    "-0.7244177313601700474161860546139380096309",
    "-0.5709721726085388475372267372539106412384",
    "-0.3941513470775633698972073709810454683628",
    "-0.2011940939974345223006283033945962078128",
    "0.0",
    "0.2011940939974345223006283033945962078128",
    "0.3941513470775633698972073709810454683628",
    "0.5709721726085388475372267372539106412384",
    "0.7244177313601700474161860546139380096309",
    "0.8482065834104272162006483207742168513663",
    "0.937273392400705904307758947710209471244",
    "0.987992518020485428489565718586612581147"};

inline constexpr const char* gl15_weights[15] = {
    "0.03075324199611726835462839357720441772175",
    "0.07036604748810812470926741645066733846671",
    "0.1071592204671719350118695466858693034155",
    "0.1395706779261543144478047945110283225209",
    "0.1662692058169939335532008604812088111309",
    "0.1861610000155622110268005618664228245062",
    "0.1984314853271115764561183264438393248187",
    "0.2025782419255612728806201999675193148387",
    "0.1984314853271115764561183264438393248187",
    "0.1861610000155622110268005618664228245062",
    "0.1662692058169939335532008604812088111309",
    "0.1395706779261543144478047945110283225209",
    "0.1071592204671719350118695466858693034155",
    "0.07036604748810812470926741645066733846671",
    "0.03075324199611726835462839357720441772175"};

template <class Real>
struct GLTable {
    Real nodes[15];
    Real weights[15];
    GLTable() {
        for (int i = 0; i < 15; ++i) {
            nodes[i] = static_cast<Real>(gl15_nodes[i]);
            weights[i] = static_cast<Real>(gl15_weights[i]);
        }
    }
};

template <>
struct GLTable<double> {
    double nodes[15];
    double weights[15];
    GLTable() {
        for (int i = 0; i < 15; ++i) {
            nodes[i] = std::strtod(gl15_nodes[i], nullptr);
            weights[i] = std::strtod(gl15_weights[i], nullptr);
        }
    }
};

template <class Real>
const GLTable<Real>& gl_table() {
    static const GLTable<Real> table;
    return table;
}

template <class Real, class F>
Real gl15_panel(const F& f, Real a, Real b) {
    const auto& t = gl_table<Real>();
    Real half = (b - a) / 2;
    Real mid = (a + b) / 2;
    Real sum = 0;
    for (int i = 0; i < 15; ++i) sum += t.weights[i] * f(mid + half * t.nodes[i]);
    return sum * half;
}

template <class Real, class F>
Real adaptive_panel(const F& f, Real a, Real b, Real whole, Real tol, int depth,
                    Real* err_accum) {
    Real mid = (a + b) / 2;
    Real left = gl15_panel<Real>(f, a, mid);
    Real right = gl15_panel<Real>(f, mid, b);
    Real refined = left + right;
    using std::abs;
    Real err = abs(refined - whole);
    if (err <= tol || depth >= 48) {
        if (depth >= 48 && err > tol)
            throw quadrature_error("adaptive quadrature: refinement limit reached");
        if (err_accum) *err_accum += err;
        return refined;
    }
    return adaptive_panel<Real>(f, a, mid, left, tol / 2, depth + 1, err_accum) +
           adaptive_panel<Real>(f, mid, b, right, tol / 2, depth + 1, err_accum);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration of f over [a,b].
/// Tolerance is relative to max(|result|, abs_floor).
template <class Real, class F>
Real integrate(const F& f, Real a, Real b, Real rel_tol, Real* err_estimate = nullptr,
               Real abs_floor = Real(1e-300)) {
    if (a == b) return Real(0);
    Real whole = detail::gl15_panel<Real>(f, a, b);
    using std::abs;
    Real scale = abs(whole);
    if (scale < abs_floor) scale = abs_floor;
    Real err = 0;
    Real result =
        detail::adaptive_panel<Real>(f, a, b, whole, rel_tol * scale, 0, &err);
    if (err_estimate) *err_estimate = err;
    return result;
}

/// Integrate over [a,b] with panels graded geometrically toward the endpoint
/// `a` (integrable singularity there). `head` is the first panel boundary
/// above `a`; each subsequent boundary doubles the distance from `a`.
template <class Real, class F>
Real integrate_graded_left(const F& f, Real a, Real b, Real head, Real rel_tol,
                           Real* err_estimate = nullptr) {
    if (b <= a) return Real(0);
    Real total = 0, err = 0;
    Real lo = a;
    Real hi = a + head;
    if (hi > b) hi = b;
    while (lo < b) {
        Real e = 0;
        total += integrate<Real>(f, lo, hi, rel_tol, &e);
        err += e;
        lo = hi;
        hi = a + (hi - a) * 2;
        if (hi > b) hi = b;
    }
    if (err_estimate) *err_estimate = err;
    return total;
}

inline QuadResult integrate_d(const std::function<double(double)>& f, double a,
                              double b, double rel_tol) {
    QuadResult r;
    r.value = integrate<double>(f, a, b, rel_tol, &r.error_estimate);
    return r;
}

}  // namespace hmt
