#include <catch_amalgamated.hpp>

#include <cmath>

#include "hmt/functionals.hpp"
#include "hmt/geometry.hpp"
#include "hmt/lemma.hpp"
#include "hmt/sequences.hpp"

using namespace hmt;
using Catch::Approx;

namespace {

// fine composite-Simpson oracle, independent of the adaptive quadrature
template <class F>
double simpson(const F& f, double a, double b, int panels = 20000) {
    double h = (b - a) / panels;
    double sum = 0;
    for (int i = 0; i < panels; ++i) {
        double x = a + i * h;
        sum += h / 6 * (f(x) + 4 * f(x + h / 2) + f(x + h));
    }
    return sum;
}

RadialProfile cone(double S) { return RadialProfile{{0, S}, {1, 0}}; }

RadialProfile zero_profile() { return RadialProfile{{0, 1}, {0, 0}}; }

}  // namespace

TEST_CASE("ln norm") {
    CHECK(ln_norm(zero_profile(), 2) == 0.0);
    // cone v = 1 - s on [0,1], n = 2: int (1-s)^2 = 1/3
    CHECK(ln_norm(cone(1.0), 2) == Approx(1.0 / 3).epsilon(1e-15));
    // near-indicator of [0,1]
    RadialProfile step{{0, 1, 1 + 1e-9}, {1, 1, 0}};
    CHECK(ln_norm(step, 3) == Approx(1.0).epsilon(1e-8));
    // against Simpson on a random profile, panels split at the kinks
    auto v = random_profile(5, 15, 8.0, 2.0);
    for (int n : {2, 3, 5}) {
        double oracle = 0;
        for (std::size_t i = 0; i < v.segments(); ++i)
            oracle += simpson([&](double s) { return std::pow(v(s), n); },
                              v.knots[i], v.knots[i + 1], 2000);
        CHECK(ln_norm(v, n) == Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("euclidean energy") {
    auto c2 = make_context(2);
    CHECK(euclidean_energy(c2, zero_profile()) == 0.0);
    // cone on [0,S], n = 2: (2 sigma)^2 S^{-2} int_0^S (s/sigma) ds = 2 sigma
    for (double S : {0.5, 1.0, 10.0})
        CHECK(euclidean_energy(c2, cone(S)) == Approx(2 * c2.sigma).epsilon(1e-14));
    // Simpson oracle for n = 3 on a random profile
    auto c3 = make_context(3);
    auto v = random_profile(11, 10, 4.0, 1.5);
    auto integrand = [&](double s) {
        double ds = 1e-7;
        double slope = (v(s + ds) - v(s - ds)) / (2 * ds);
        return std::pow(std::fabs(slope), 3) * std::pow(s / c3.sigma, 2);
    };
    double oracle = std::pow(3 * c3.sigma, 3) * simpson(integrand, 1e-9, v.support());
    CHECK(euclidean_energy(c3, v) == Approx(oracle).epsilon(1e-3));
}

TEST_CASE("energy homogeneity") {
    for (int n : {2, 3, 4}) {
        auto ctx = make_context(n);
        auto v = random_profile(21, 12, 6.0, 2.0);
        RadialProfile cv = v;
        double c = 1.7;
        for (double& x : cv.values) x *= c;
        double cn = std::pow(c, n);
        CHECK(euclidean_energy(ctx, cv) ==
              Approx(cn * euclidean_energy(ctx, v)).epsilon(1e-12));
        CHECK(hyperbolic_energy(ctx, cv) ==
              Approx(cn * hyperbolic_energy(ctx, v)).epsilon(1e-10));
        CHECK(ln_norm(cv, n) == Approx(cn * ln_norm(v, n)).epsilon(1e-12));
        CHECK(extra_term(ctx, cv) == Approx(cn * extra_term(ctx, v)).epsilon(1e-10));
    }
}

TEST_CASE("hyperbolic energy closed form for the n=2 cone") {
    // with k(s) = s^2/4 the energy reduces to euclidean + S/3
    auto c2 = make_context(2);
    for (double S : {0.5, 2.0, 25.0})
        CHECK(hyperbolic_energy(c2, cone(S)) ==
              Approx(2 * c2.sigma + S / 3).epsilon(1e-11));
}

TEST_CASE("hyperbolic energy: measure route and polar route agree") {
    for (int n : {2, 3, 4}) {
        auto ctx = make_context(n);
        for (std::uint64_t seed : {1u, 9u, 33u}) {
            auto v = random_profile(seed, 12, 5.0, 2.0);
            double a = hyperbolic_energy(ctx, v);
            double b = hyperbolic_energy_measure_route(ctx, v);
            CHECK(a == Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("truncated exponential phi_n") {
    CHECK(phi_n(2, 1.0) == Approx(std::exp(1.0) - 1).epsilon(1e-15));
    for (int n : {2, 3, 4, 7}) CHECK(phi_n(n, 0.0) == 0.0);
    // increasing
    for (int n : {2, 4}) {
        double prev = 0;
        for (double t = 0.1; t < 20; t += 0.5) {
            double x = phi_n(n, t);
            CHECK(x > prev);
            prev = x;
        }
    }
    // small-argument series oracle for n = 4
    double t = 0.01;
    double oracle = 0, term = t * t * t / 6.0;
    for (int j = 3; j < 43; ++j) {
        oracle += term;
        term *= t / (j + 1);
    }
    CHECK(phi_n(4, t) == Approx(oracle).epsilon(1e-14));
    // lower bound t^{n-1}/(n-1)!
    for (int n : {2, 3, 5})
        for (double x : {0.01, 1.0, 10.0}) {
            double fact = 1;
            for (int j = 2; j <= n - 1; ++j) fact *= j;
            CHECK(phi_n(n, x) >= std::pow(x, n - 1) / fact);
        }
    CHECK_THROWS_AS(phi_n(3, 1000.0), blowup_error);
}

TEST_CASE("mt functional") {
    auto c2 = make_context(2);
    CHECK(mt_functional(c2, zero_profile(), 1.0) == 0.0);
    // monotone in alpha
    auto v = random_profile(17, 10, 3.0, 1.2);
    CHECK(mt_functional(c2, v, 0.5) <= mt_functional(c2, v, 1.0));
    CHECK(mt_functional(c2, v, 1.0) <= mt_functional(c2, v, 2.0));
    // cone, alpha = 1: int_0^S (e^{(1-s/S)^2} - 1) ds vs refined oracle
    double S = 2.0;
    double oracle =
        simpson([&](double s) { return std::exp(std::pow(1 - s / S, 2)) - 1; }, 0, S);
    CHECK(mt_functional(c2, cone(S), 1.0) == Approx(oracle).epsilon(1e-10));
    // blow-up guard
    RadialProfile tall{{0, 1}, {100, 0}};
    CHECK_THROWS_AS(mt_functional(c2, tall, c2.alpha), blowup_error);
}

TEST_CASE("exact growth ratio") {
    auto c2 = make_context(2);
    CHECK_THROWS_AS(exact_growth_ratio(c2, zero_profile(), c2.alpha), domain_error);

    // crude bound: for v <= 1 with ||v||_n^n = 1 the integrand is at most
    // Phi_n(alpha_n), so ratio <= Phi_n(alpha_n) * support
    RadialProfile box{{0, 1.0, 1.5}, {1.0, 1.0, 0}};
    double norm = ln_norm(box, 2);
    RadialProfile scaled = box;
    for (double& x : scaled.values) x /= std::sqrt(norm);
    double r = exact_growth_ratio(c2, scaled, c2.alpha);
    CHECK(r <= phi_n(2, c2.alpha) * scaled.support() / ln_norm(scaled, 2) + 1e-9);

    // Moser-sequence profile at k = 5 vs direct polar-coordinate quadrature
    auto u = moser_profile(c2, 5, 64);
    auto v = profile_from_hyperbolic(c2, u);
    double got = exact_growth_ratio(c2, v, c2.alpha, 2.0);
    // oracle: integrate Phi_2(alpha v^2)/(1+v)^2 in the t coordinate, with v
    // composed through the volume map and panels split at the mapped knots
    double t_lo = 0, total = 0;
    for (std::size_t i = 0; i < v.segments(); ++i) {
        double t_hi = phi_inv(c2, v.knots[i + 1] / c2.sigma);
        auto f = [&](double t) {
            double uv = v(c2.sigma * phi(c2, t));
            return phi_n(2, c2.alpha * uv * uv) / std::pow(1 + uv, 2.0) * std::sinh(t);
        };
        if (t_hi > t_lo) total += c2.omega * simpson(f, t_lo, t_hi, 2000);
        t_lo = t_hi;
    }
    double oracle = total / ln_norm(v, 2);
    CHECK(got == Approx(oracle).epsilon(1e-6));
}

TEST_CASE("extra term") {
    auto c3 = make_context(3);
    CHECK(extra_term(c3, zero_profile()) == 0.0);

    // profiles sampling v(s) = s^{-1/n} make w constant, so the term on
    // [s_1, s_m] vanishes up to interpolation error
    {
        const int n = 3;
        auto ctx = make_context(n);
        RadialProfile v;
        int m = 400;
        v.knots.push_back(0);
        v.values.push_back(std::pow(0.5, -1.0 / n));
        for (int i = 0; i <= m; ++i) {
            double s = 0.5 + 9.5 * i / m;
            v.knots.push_back(s);
            v.values.push_back(std::pow(s, -1.0 / n));
        }
        v.knots.push_back(10.5);
        v.values.push_back(0);
        validate(v);
        // integrate only over the sampled power-law range
        WTransform w = w_transform(v, n);
        double inner = 0;
        for (std::size_t i = 1; i + 1 < v.knots.size() - 1; ++i)
            inner += integrate<double>(
                [&](double s) {
                    return std::pow(std::fabs(w.derivative(s, i)), n) *
                           std::pow(s, n - 1);
                },
                v.knots[i], v.knots[i + 1], 1e-12);
        CHECK(std::pow(n - 1, n) * inner < 1e-6);
    }

    // constant-then-drop: on the flat stretch (v s^{1/n})' = v/(n s^{1-1/n}),
    // so the integrand there is the constant (c/n)^n
    {
        const int n = 2;
        auto ctx = make_context(n);
        double c = 1.5, a = 4.0, b = 4.5;
        RadialProfile v{{0, a, b}, {c, c, 0}};
        WTransform w = w_transform(v, n);
        auto f2 = [&](double s) {
            return std::pow(std::fabs(w.derivative(s, 1)), n) * std::pow(s, n - 1);
        };
        double oracle = std::pow(n - 1, n) *
                        (std::pow(c / n, n) * a + simpson(f2, a, b, 4000));
        CHECK(extra_term(ctx, v) == Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("comparison inequalities hold on random profiles") {
    for (int n : {2, 3, 4}) {
        auto ctx = make_context(n);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto v = random_profile(seed, 15, 10.0, 2.0);
            auto er = energy_report(ctx, v);
            double lhs = er.hyperbolic_energy - ctx.hardy * er.ln_norm;
            double tol = 1e-8 * (1 + std::fabs(lhs));
            CHECK(lhs >= er.euclidean_energy - tol);
            CHECK(lhs >= er.euclidean_energy + er.extra_term - tol);
            CHECK(er.hyperbolic_energy >= ctx.hardy * er.ln_norm - tol);
            CHECK(er.extra_term >= 0);
        }
    }
}

TEST_CASE("elementary inequality |a-b|^n >= |a|^n + |b|^n - n a b^{n-1}") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    for (int n : {2, 3, 4, 5}) {
        for (int i = 0; i < 2000; ++i) {
            double x = uni(rng), y = uni(rng);
            double b = std::fabs(y);
            double a = std::min(x, b);  // enforce a <= b, b >= 0
            double scale = std::pow(std::max({std::fabs(a), b, 1.0}), n);
            CHECK(elementary_inequality_slack(a, b, n) >= -1e-12 * scale);
        }
    }
}
