#include <catch_amalgamated.hpp>

#include <cmath>

#include <boost/math/special_functions/digamma.hpp>

#include "hmt/sequences.hpp"

using namespace hmt;
using Catch::Approx;

TEST_CASE("beta function") {
    CHECK(beta(1.0, 1.0) == Approx(1.0).epsilon(1e-15));
    for (int n : {2, 3, 7}) CHECK(beta(1.0, double(n)) == Approx(1.0 / n).epsilon(1e-14));
    CHECK(beta(2.5, 2.5) == Approx(beta(2.5, 2.5)));
    CHECK_THROWS_AS(beta(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(beta(1.0, -2.0), domain_error);

    // small first argument: B(eps, b) = 1/eps - psi(b) - gamma + O(eps)
    double eps = 1e-6;
    double gamma = 0.5772156649015328606;
    double series = 1 / eps - boost::math::digamma(3.0) - gamma;
    CHECK(beta(eps, 3.0) == Approx(series).epsilon(1e-10));

    // extended-precision route agrees
    ext_real be = beta<ext_real>(ext_real(eps), ext_real(3));
    CHECK(beta(eps, 3.0) == Approx(static_cast<double>(be)).epsilon(1e-13));
}

TEST_CASE("psi_k closed forms") {
    auto c2 = make_context(2);
    CHECK_THROWS_AS(psi_k_closed_forms(c2, 0, 0.0), domain_error);
    CHECK_THROWS_AS(psi_k_closed_forms(c2, 5, 0.25), domain_error);

    // product approaches 1/(hardy - lambda): n=2, lambda=0, k=1e6 within 1e-3 of 4
    auto r = psi_k_closed_forms(c2, 1000000, 0.0);
    CHECK(r.limit_target == Approx(4.0).epsilon(1e-15));
    CHECK(r.product == Approx(4.0).epsilon(1e-3));

    // beta ratio B(1/k,n)/B(1/k,n/2) -> 1
    double ratio = beta(1e-6, 2.0) / beta(1e-6, 1.0);
    CHECK(std::fabs(ratio - 1) <= 1e-4);

    // quadrature cross-check of both closed forms at k=5, n in {2,3}
    for (int n : {2, 3}) {
        auto ctx = make_context(n);
        auto rec = psi_k_closed_forms(ctx, 5, 0.0);
        CHECK(psi_k_ln_norm_quadrature(ctx, 5) ==
              Approx(rec.ln_norm_closed).epsilon(1e-8));
        CHECK(psi_k_energy_quadrature(ctx, 5) ==
              Approx(rec.energy_closed).epsilon(1e-8));
    }

    // empirical approach direction of the normalization product
    double prev_gap = 1e9;
    for (long long k : {100LL, 10000LL, 1000000LL}) {
        auto rec = psi_k_closed_forms(c2, k, 0.1);
        double gap = std::fabs(rec.product - rec.limit_target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("normalization product converges like 1/k") {
    auto c3 = make_context(3);
    // fitted decay exponent of |product - target| over k in [1e2, 1e6]
    double k_lo = 1e2, k_hi = 1e6;
    double g_lo = std::fabs(psi_k_closed_forms(c3, (long long)k_lo, 0.0).product -
                            1 / c3.hardy);
    double g_hi = std::fabs(psi_k_closed_forms(c3, (long long)k_hi, 0.0).product -
                            1 / c3.hardy);
    double slope = std::log(g_lo / g_hi) / std::log(k_hi / k_lo);
    CHECK(slope >= 0.9);
}

TEST_CASE("lower bound") {
    auto c2 = make_context(2);
    CHECK(lower_bound(c2, 0.0) == Approx(16 * M_PI).epsilon(1e-12));
    auto c3 = make_context(3);
    double alpha3 = 3 * std::sqrt(4 * M_PI);
    CHECK(lower_bound(c3, 0.0) == Approx(alpha3 * alpha3 * 27.0 / 16).epsilon(1e-12));

    // monotone increasing in lambda, diverging toward hardy
    double prev = 0;
    for (double lam = 0; lam < c2.hardy - 1e-9; lam += c2.hardy / 16) {
        double lb = lower_bound(c2, lam);
        CHECK(lb > prev);
        prev = lb;
    }
    CHECK(lower_bound(c2, c2.hardy - 1e-12) > 1e10);
    CHECK_THROWS_AS(lower_bound(c2, c2.hardy), domain_error);
}

TEST_CASE("moser sequence normalization") {
    auto c2 = make_context(2);
    CHECK_THROWS_AS(moser_C_k(c2, 1), domain_error);

    for (int k : {5, 10, 20, 40}) {
        auto m = moser_C_k(c2, k);
        CHECK(m.C_k > 0);
        // constraint holds by construction of C_k
        CHECK(m.energy - c2.hardy * m.ln_norm == Approx(1.0).epsilon(1e-12));
        // C_k^{n/(n-1)} k = k + O(1)
        CHECK(std::fabs(std::pow(m.C_k, 2) * k - k) <= 5.0);
        // ||u_k||^n = O(1/k)
        CHECK(k * m.ln_norm <= 10.0);
    }

    // independent quadrature of the constraint through the piecewise profile
    for (int k : {5, 8}) {
        auto m = moser_C_k(c2, k);
        double amp = m.plateau;
        double ek = std::exp(-double(k));
        // energy: |u'(rho)| = amp/(k rho) on the annulus
        auto fe = [&](double t) {
            return std::pow(amp / (k * t), 2) * std::sinh(t);
        };
        double energy = c2.omega * integrate<double>(fe, ek, 1.0, 1e-12);
        auto fn = [&](double t) {
            double u = amp * moser_shape(k, t);
            return u * u * std::sinh(t);
        };
        double norm = c2.omega * (integrate<double>(fn, 0.0, ek, 1e-12) +
                                  integrate<double>(fn, ek, 1.0, 1e-12));
        CHECK(energy - c2.hardy * norm == Approx(1.0).margin(1e-6));
        CHECK(norm == Approx(m.ln_norm).epsilon(1e-8));
    }

    // inner integral order: k^{n-1} int_0^{e^-k} sinh^{n-1} <= C k^{n-1} e^{-nk}
    double fitted_C = 0;
    for (int k = 5; k <= 40; k += 5) {
        auto m = moser_C_k(c2, k);
        fitted_C = std::max(fitted_C, m.I_core / (k * std::exp(-2.0 * k)));
    }
    CHECK(fitted_C <= 1.0);  // sinh t <= t cosh(1) on [0, e^-5] makes C ~ 1/2
}

TEST_CASE("moser profile satisfies invariants") {
    auto c2 = make_context(2);
    auto u = moser_profile(c2, 6);
    CHECK_NOTHROW(validate(u));
    CHECK(u.values.front() > 0);
    CHECK(u.values.back() == 0);
}

TEST_CASE("blow-up trends") {
    auto c2 = make_context(2);
    CHECK_THROWS_AS(blowup_ratio(c2, 5, -1.0, 2.0), domain_error);

    // supercritical alpha: clear growth from k=5 to k=25
    double r5 = blowup_ratio(c2, 5, 1.05 * c2.alpha, 2.0).ratio;
    double r25 = blowup_ratio(c2, 25, 1.05 * c2.alpha, 2.0).ratio;
    CHECK(r25 >= 10 * r5);

    // subcritical denominator power p = 1: strictly increasing in k
    double prev = 0;
    for (int k : {5, 10, 20, 40}) {
        double r = blowup_ratio(c2, k, c2.alpha, 1.0).ratio;
        CHECK(r > prev);
        prev = r;
    }

    // critical pair stays bounded
    double lo = 1e300, hi = 0;
    for (int k : {5, 10, 20, 40}) {
        double r = blowup_ratio(c2, k, c2.alpha, 2.0).ratio;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 20.0);
}
