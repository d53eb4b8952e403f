#ifndef HYPERELL_THEOREMS_HPP
#define HYPERELL_THEOREMS_HPP

#include "hyperell/poly.hpp"
#include "hyperell/testfunction.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperell {

namespace detail {

inline double to_double(const Rational& r) {
    return static_cast<double>(numerator(r)) / static_cast<double>(denominator(r));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Prime sums over {P^r : d(P^r) = n}. Each summand depends on P only through
// |P| = q^m with m = d(P) | n, so the sums collapse to divisor sums weighted
// by the exact irreducible counts pi_q(m).

/// sum over P, r with d(P^r) = n of d(P) / (|P|^r (|P|+1)).
inline Rational prime_sum_c(std::uint32_t q, int n) {
    Rational s = 0;
    BigInt qn = big_pow(q, static_cast<std::uint64_t>(n));
    for (std::uint64_t m : divisors_of(static_cast<std::uint64_t>(n)))
        s += Rational(pi_q(q, m) * m, qn * (big_pow(q, m) + 1));
    return s;
}

/// sum of d(P)^2 / (|P|^r (|P|+1)).
inline Rational prime_sum_c1(std::uint32_t q, int n) {
    Rational s = 0;
    BigInt qn = big_pow(q, static_cast<std::uint64_t>(n));
    for (std::uint64_t m : divisors_of(static_cast<std::uint64_t>(n)))
        s += Rational(pi_q(q, m) * m * m, qn * (big_pow(q, m) + 1));
    return s;
}

/// sum of d(P)^2 / (|P|^{2r-2} (|P|+1)^2).
inline Rational prime_sum_c2(std::uint32_t q, int n) {
    Rational s = 0;
    for (std::uint64_t m : divisors_of(static_cast<std::uint64_t>(n))) {
        BigInt den = big_pow(q, 2 * static_cast<std::uint64_t>(n) - 2 * m) *
                     (big_pow(q, m) + 1) * (big_pow(q, m) + 1);
        s += Rational(pi_q(q, m) * m * m, den);
    }
    return s;
}

/// c(Phi, g) = (1/g) sum_{n <= N/2} hat(n/g) * prime_sum_c(q, n).
inline Rational c_phi(const TestFunction& tf, const FieldSpec& F, int g) {
    Rational s = 0;
    for (int n = 1; 2 * n <= tf.support(); ++n) s += tf.hat(2 * n) * prime_sum_c(F.q(), n);
    return s / g;
}

// ---------------------------------------------------------------------------
// Theorem evaluators. Every displayed term is an exact rational; the error
// terms are reported as predicted decay scales (soft constants).

struct Thm1Report {
    int N = 0, K = 0, Kprime = 0;
    bool forced = false;
    Rational main, oscillatory, c_term;
    std::vector<std::pair<int, Rational>> secondary; // per k in [K, K']
    std::vector<std::pair<int, Rational>> tails;
    double predicted_error_scale = 0;

    Rational total_without_secondary() const { return main + oscillatory + c_term; }
    Rational total() const {
        Rational t = total_without_secondary();
        for (const auto& [k, v] : secondary) t += v;
        for (const auto& [k, v] : tails) t += v;
        return t;
    }
};

struct Thm2Report {
    int N = 0, K = 0, Kprime = 0;
    bool forced = false;
    Rational main, lambda_diag, half_term, c1, c2, c3, c4;
    std::vector<std::pair<int, Rational>> secondary;
    std::vector<std::pair<int, Rational>> tails;
    double predicted_error_scale = 0;

    Rational total_without_secondary() const {
        return main + lambda_diag + half_term + c1 + c2 + c3 + c4;
    }
    Rational total() const {
        Rational t = total_without_secondary();
        for (const auto& [k, v] : secondary) t += v;
        for (const auto& [k, v] : tails) t += v;
        return t;
    }
};

namespace detail {

inline Rational q_pow_neg(std::uint32_t q, long long e) {
    // q^{-e} for e >= 0
    return Rational(1, big_pow(q, static_cast<std::uint64_t>(e)));
}

[[noreturn]] inline void range_error(const std::string& thm, int N, int g) {
    throw std::domain_error(thm + ": N = " + std::to_string(N) +
                            " lies in no admissible window for g = " + std::to_string(g) +
                            " (use force to evaluate anyway)");
}

} // namespace detail

inline Thm1Report thm1_rhs(const TestFunction& tf, const FieldSpec& F, int g, int K, int Kprime,
                           bool force = false) {
    if (g < 1) throw std::domain_error("thm1_rhs: g must be >= 1");
    int N = tf.support();
    Thm1Report rep;
    rep.N = N;
    rep.K = K;
    rep.Kprime = Kprime;
    std::uint32_t q = F.q();
    bool admissible = (K >= 1) ? (static_cast<long long>(N) * (2 * K + 1) >= 2 * g &&
                                  static_cast<long long>(N) * (2 * K - 1) <= 2 * g - 1)
                               : (2 * g <= N && N < 4 * g);
    if (!admissible) {
        if (!force) detail::range_error("thm1_rhs", N, g);
        rep.forced = true;
    }
    rep.main = tf.hat(0);
    if (K >= 1) {
        if (Kprime < K || Kprime > g)
            throw std::domain_error("thm1_rhs: require K <= K' <= g");
        for (int n = 1; 2 * n <= N; ++n) rep.oscillatory -= tf.hat(2 * n);
        rep.oscillatory /= g;
        rep.c_term = c_phi(tf, F, g);
        for (int k = K; k <= Kprime; ++k) {
            Rational v = 0;
            if (g % (2 * k + 1) == 0) {
                int idx = 2 * g / (2 * k + 1); // hat(1/(2k+1)) sits at n = 2g/(2k+1)
                v = -tf.hat(idx) * detail::q_pow_neg(q, 4LL * k * g / (2 * k + 1)) /
                    (g * (static_cast<long long>(q) - 1));
            }
            rep.secondary.emplace_back(k, v);
        }
        for (int k = K; k <= Kprime; ++k) {
            Rational v = 0;
            long long lo = (g + 1 + 2 * k) / (2 * k + 1); // ceil((g+1)/(2k+1))
            long long hi = std::min<long long>(N / 2, (g - 1) / (2 * k));
            for (long long n = lo; n <= hi; ++n)
                v += tf.hat(static_cast<int>(2 * n)) * detail::q_pow_neg(q, 4 * k * n);
            rep.tails.emplace_back(k, v / g);
        }
        double scale1 = std::pow(q, std::min(N / 2.0, (g - 1) / (2.0 * K)) - 2 * g - 0.5) / K;
        double scale2 = std::pow(q, (g - 1.0) / (Kprime + 1) - 2 * g) / g;
        rep.predicted_error_scale = scale1 + scale2;
    } else {
        for (int n = 1; n <= g; ++n) rep.oscillatory -= tf.hat(2 * n);
        rep.oscillatory /= g;
        rep.c_term = c_phi(tf, F, g);
        rep.secondary.emplace_back(
            0, -tf.hat(2 * g) / (g * (static_cast<long long>(q) - 1))); // hat(1) at n = 2g
        rep.predicted_error_scale = std::pow(q, N / 2.0 - 2 * g - 0.5);
    }
    return rep;
}

inline Thm2Report thm2_rhs(const TestFunction& tf, const FieldSpec& F, int g, int K, int Kprime,
                           bool force = false) {
    if (g < 1) throw std::domain_error("thm2_rhs: g must be >= 1");
    int N = tf.support();
    Thm2Report rep;
    rep.N = N;
    rep.K = K;
    rep.Kprime = Kprime;
    std::uint32_t q = F.q();
    bool admissible = (K >= 1) ? (static_cast<long long>(N) * (K + 1) >= g &&
                                  static_cast<long long>(N) * K <= g - 1)
                               : (g <= N && N < 2 * g);
    if (!admissible) {
        if (!force) detail::range_error("thm2_rhs", N, g);
        rep.forced = true;
    }
    long long twoG2 = 2LL * g * g;
    rep.main = tf.hat(0);
    for (int n = 1; n <= N; ++n)
        rep.lambda_diag += tf.hat(n) * Rational(lambda_square_sum(q, static_cast<std::uint64_t>(n)),
                                                big_pow(q, static_cast<std::uint64_t>(n)));
    rep.lambda_diag /= twoG2;
    for (int n = 1; 2 * n <= N; ++n) rep.half_term += tf.hat(2 * n);
    rep.half_term /= twoG2;
    // c1 carries a minus sign: the Lambda^2 diagonal counts chi_D(P)^2 = 1
    // with weight (1 + 1/|P|)^{-1} = 1 - 1/(|P|+1), so the correction to the
    // plain Lambda^2 sum is negative. Confirmed against exact S2 moments.
    for (int n = 1; n <= N; ++n) rep.c1 -= tf.hat(n) * prime_sum_c1(q, n);
    rep.c1 /= twoG2;
    for (int n = 1; 2 * n <= N; ++n) {
        Rational a = prime_sum_c(q, n);
        rep.c2 -= tf.hat(2 * n) * prime_sum_c2(q, n);
        rep.c3 -= tf.hat(2 * n) * a * 2;
        rep.c4 += tf.hat(2 * n) * a * a;
    }
    rep.c2 /= twoG2;
    rep.c3 /= twoG2;
    rep.c4 /= twoG2;
    if (K >= 1) {
        if (Kprime < K || Kprime >= g)
            throw std::domain_error("thm2_rhs: require K <= K' < g");
        for (int k = K; k <= Kprime; ++k) {
            Rational v = 0;
            if (g % (k + 1) == 0) {
                int idx = g / (k + 1); // hat(1/(2k+2)) sits at n = g/(k+1)
                v = tf.hat(idx) * (k + 1) * detail::q_pow_neg(q, 2LL * k * g / (k + 1)) /
                    (twoG2 * (static_cast<long long>(q) - 1));
            }
            rep.secondary.emplace_back(k, v);
        }
        for (int k = K; k <= Kprime; ++k) {
            Rational v = 0;
            long long lo = (g + k + 1) / (k + 1); // ceil((g+1)/(k+1))
            for (long long n = lo; n <= N; ++n)
                v -= tf.hat(static_cast<int>(n)) * detail::q_pow_neg(q, 2 * k * n);
            rep.tails.emplace_back(k, v * (k + 1) / twoG2);
        }
        double s1 = std::pow(q, 3.0 * g / (2.0 * (K + 1)) - 2 * g - 1) / (g * g);
        double s2 = std::max(1.0, std::log(static_cast<double>(Kprime))) * std::pow(q, N - 2 * g - 1.0);
        double s3 = Kprime * std::pow(q, 2.0 * (g - 1) / (Kprime + 1) - 2 * g - 1) / (g * g);
        rep.predicted_error_scale = s1 + s2 + s3;
    } else {
        rep.secondary.emplace_back(0, tf.hat(g) * Rational(1, BigInt(twoG2) * (q - 1)));
        Rational v = 0;
        for (int n = g + 1; n <= N; ++n) v -= tf.hat(n);
        rep.tails.emplace_back(0, v / twoG2);
        rep.predicted_error_scale = std::pow(q, -g / 2.0 - 0.5) / (g * g) +
                                    std::pow(q, N - 2 * g - 1.0) +
                                    std::pow(q, N - 2.0 * g) / (g * g);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Katz-Sarnak limits for continuous Fourier pairs, by adaptive quadrature.

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// 1-level limit against the symplectic density: hat(0) - (1/2) int_{-1}^{1} hat.
inline double katz_sarnak_density(const std::function<double(double)>& phi_hat,
                                  double tol = 1e-10) {
    return phi_hat(0.0) - integrate(phi_hat, 0.0, 1.0, tol); // hat even
}

/// Pair-correlation limit against delta_0(y) + eta(y) y, read with the even
/// convention (|y| weighting): hat(0) + 2 int_0^1 y hat(y) dy.
inline double pair_corr_limit(const std::function<double(double)>& phi_hat, double tol = 1e-10) {
    return phi_hat(0.0) +
           2.0 * integrate([&](double y) { return y * phi_hat(y); }, 0.0, 1.0, tol);
}

// Stock continuous pairs, with the headline bounds both as exact rationals
// and through the quadrature route.

/// Phi(x) = (sin 2 pi x / 2 pi x)^2, hat(y) = (1/2)(1 - |y|/2) on [-2, 2].
inline double sinc_pair_hat(double y) {
    double a = std::abs(y);
    return a >= 2.0 ? 0.0 : 0.5 * (1.0 - a / 2.0);
}

/// hat(y) = 1 - |y| on [-1, 1] (Fejer kernel pair).
inline double fejer_pair_hat(double y) {
    double a = std::abs(y);
    return a >= 1.0 ? 0.0 : 1.0 - a;
}

/// Nonvanishing bound from the sinc pair: 1 - density / (2 Phi(0)), with
/// density = hat(0) - int_0^1 hat = 1/2 - 3/8 and Phi(0) = int hat = 1.
inline Rational sinc_pair_nonvanishing_bound() {
    Rational density = Rational(1, 2) - Rational(3, 8);
    Rational phi0 = 1;
    return 1 - density / (2 * phi0);
}

/// Simple-zero bound from the Fejer pair: 2 - (hat(0) + 2 int_0^1 y(1-y) dy).
inline Rational fejer_pair_simple_bound() {
    return 2 - (Rational(1) + Rational(1, 3));
}

struct CorollaryConstants {
    double p0_bound;      // (19 - cot(1/4)) / 16
    double simple_bound;  // 3/2 - cot(1/sqrt 2)/sqrt 2
    double inf_integral;  // (cot(1/4) - 3) / 8
    double h0_inner;      // <1, h0> on [-1, 1]
    double h0_residual;   // max defect of the integral equation for h0
};

inline CorollaryConstants corollary_constants() {
    auto cot = [](double x) { return std::cos(x) / std::sin(x); };
    CorollaryConstants cc{};
    cc.p0_bound = (19.0 - cot(0.25)) / 16.0;
    cc.simple_bound = 1.5 - cot(1.0 / std::sqrt(2.0)) / std::sqrt(2.0);
    cc.inf_integral = (cot(0.25) - 3.0) / 8.0;
    double denom = std::sqrt(2.0) * std::sin(0.25) -
                   std::cos((std::numbers::pi + 1.0) / 4.0);
    auto h0 = [&](double y) {
        return std::sin(std::abs(y) / 2.0 - (std::numbers::pi + 1.0) / 4.0) / denom;
    };
    double half = integrate(h0, 0.0, 1.0, 1e-12);
    cc.h0_inner = 2.0 * half;
    double worst = 0;
    for (int i = 0; i <= 200; ++i) {
        double y = i / 200.0;
        double lhs = h0(y) - 0.5 * half - 0.5 * integrate(h0, 0.0, 1.0 - y, 1e-12);
        worst = std::max(worst, std::abs(lhs - 1.0));
    }
    cc.h0_residual = worst;
    return cc;
}

} // namespace hyperell

#endif
