#ifndef HYPERELL_RATIOS_HPP
#define HYPERELL_RATIOS_HPP

#include "hyperell/ensemble.hpp"
#include "hyperell/theorems.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hyperell {

// ---------------------------------------------------------------------------
// zeta_q(s) = (1 - q^{1-s})^{-1}, with the u-form Z(u) = (1 - qu)^{-1}.

inline Complex zeta_q(const FieldSpec& F, Complex s) {
    Complex den = 1.0 - std::exp((1.0 - s) * std::log(static_cast<double>(F.q())));
    if (std::abs(den) < 1e-12)
        throw std::domain_error("zeta_q: s lies on the pole line 1 + 2 pi i k / log q");
    return 1.0 / den;
}

inline Complex zeta_u(const FieldSpec& F, Complex u) {
    Complex den = 1.0 - static_cast<double>(F.q()) * u;
    if (std::abs(den) < 1e-12) throw std::domain_error("zeta_u: pole at u = 1/q");
    return 1.0 / den;
}

// ---------------------------------------------------------------------------
// Euler products grouped by degree: every factor depends on P only through
// |P| = q^m, so the product over P of degree m is factor(q^m)^{pi_q(m)},
// evaluated as exp(pi_q(m) log factor). Truncation at Dmax with a geometric
// tail estimate from the last two degree aggregates.

struct AEulerResult {
    Complex value;
    double tail_bound;
};

namespace detail {

inline Complex log1p_c(Complex z) {
    if (std::abs(z) < 1e-4) return z * (1.0 - z * (0.5 - z / 3.0)); // z - z^2/2 + z^3/3
    return std::log(1.0 + z);
}

} // namespace detail

/// A_g(alpha; beta) from the ratios recipe. Requires Re(alpha+beta) > -1/2.
inline AEulerResult a_euler(const FieldSpec& F, Complex alpha, Complex beta, int Dmax = 40) {
    if ((alpha + beta).real() <= -0.5)
        throw std::domain_error("a_euler: requires Re(alpha+beta) > -1/2");
    double logq = std::log(static_cast<double>(F.q()));
    Complex logsum = 0;
    double prev = 0, last = 0;
    for (int m = 1; m <= Dmax; ++m) {
        double x = std::pow(static_cast<double>(F.q()), m);
        Complex e1 = std::exp(-static_cast<double>(m) * logq * (1.0 + alpha + beta));
        Complex e2 = std::exp(-static_cast<double>(m) * logq * (1.0 + 2.0 * alpha));
        Complex e3 = std::exp(-static_cast<double>(m) * logq * (alpha + beta));
        // The two factors almost cancel; combining them with e1 x = e3 gives
        // log f = log1p((e1 - e2)/(x + 1 - e3 - e1)), which stays accurate
        // after multiplication by pi_q(m) ~ q^m / m.
        Complex logf = detail::log1p_c((e1 - e2) / (x + 1.0 - e3 - e1));
        double pim = static_cast<double>(pi_q(F.q(), static_cast<std::uint64_t>(m)));
        Complex a_m = pim * logf;
        logsum += a_m;
        prev = last;
        last = std::abs(a_m);
    }
    double tail = 0;
    if (prev > 0 && last > 0 && last < prev) {
        double r = last / prev;
        tail = last * r / (1.0 - r);
    } else if (last > 0) {
        tail = last; // no clean geometric decay observed; report the last term
    }
    return {std::exp(logsum), tail};
}

/// A'_g(r; r) = sum_P log|P| / ((|P|^{1+2r} - 1)(|P|+1)). The default unit is
/// log q (log|P| = d(P) log q divided out); natural = logq_units * log q.
struct APrimeResult {
    double logq_units;
    double natural;
};

inline APrimeResult a_prime_diag(const FieldSpec& F, double r, int Dmax = 40) {
    if (r <= -0.25) throw std::domain_error("a_prime_diag: requires r > -1/4");
    double s = 0;
    for (int m = 1; m <= Dmax; ++m) {
        double pim = static_cast<double>(pi_q(F.q(), static_cast<std::uint64_t>(m)));
        double xm = std::pow(static_cast<double>(F.q()), m);
        double x2r = std::pow(static_cast<double>(F.q()), m * (1.0 + 2.0 * r));
        s += pim * m / ((x2r - 1.0) * (xm + 1.0));
    }
    return {s, s * std::log(static_cast<double>(F.q()))};
}

// ---------------------------------------------------------------------------
// Conjectural ratio and averaged log-derivative

inline Complex ratios_R(const FieldSpec& F, int g, Complex alpha, Complex beta) {
    double logq = std::log(static_cast<double>(F.q()));
    Complex qa2 = std::exp(-2.0 * alpha * logq); // q^{-2 alpha}
    if (std::abs(1.0 - qa2) < 1e-9 || std::abs(1.0 - 1.0 / qa2) < 1e-9)
        throw std::domain_error("ratios_R: pole of zeta_q(1 +- 2 alpha) at alpha = 0");
    // zeta_q(1+2a)/zeta_q(1+a+b) = (1 - q^{-(a+b)}) / (1 - q^{-2a})
    Complex t1 = (1.0 - std::exp(-(alpha + beta) * logq)) / (1.0 - qa2) *
                 a_euler(F, alpha, beta).value;
    // zeta_q(1-2a)/zeta_q(1-a+b) = (1 - q^{a-b}) / (1 - q^{2a})
    Complex t2 = std::exp(-2.0 * static_cast<double>(g) * alpha * logq) *
                 (1.0 - std::exp((alpha - beta) * logq)) / (1.0 - 1.0 / qa2) *
                 a_euler(F, -alpha, beta).value;
    return t1 + t2;
}

/// Predicted ensemble average of L'/L(1/2 + r), natural-log units.
inline double ratios_logderiv(const FieldSpec& F, int g, double r) {
    if (std::abs(r) < 1e-9) throw std::domain_error("ratios_logderiv: pole at r = 0");
    double q = F.q(), logq = std::log(q);
    double q2r = std::pow(q, -2.0 * r);
    double zterm = -logq * q2r / (1.0 - q2r); // zeta'_q/zeta_q(1+2r)
    double aprime = a_prime_diag(F, r).natural;
    double zeta_1m2r = 1.0 / (1.0 - std::pow(q, 2.0 * r));
    double third = -logq * std::pow(q, -2.0 * g * r) * zeta_1m2r *
                   a_euler(F, -r, r).value.real();
    return zterm + aprime + third;
}

// ---------------------------------------------------------------------------
// Theorem A.3: the Ratios-Conjecture prediction for the 1-level density,
// with the four-term breakdown.

struct RatiosOneLevel {
    Rational A1, A2, A3, A4;
    Rational total() const { return A1 + A2 + A3 + A4; }
};

inline RatiosOneLevel ratios_one_level(const TestFunction& tf, const FieldSpec& F, int g) {
    if (g < 1) throw std::domain_error("ratios_one_level: g must be >= 1");
    RatiosOneLevel r;
    int N = tf.support();
    r.A1 = tf.hat(0);
    for (int n = 1; 2 * n <= N; ++n) r.A2 -= tf.hat(2 * n);
    r.A2 /= g;
    r.A3 = c_phi(tf, F, g);
    r.A4 = -tf.hat(2 * g) / (g * (static_cast<long long>(F.q()) - 1));
    for (int n = g + 1; 2 * n <= N; ++n) r.A4 += tf.hat(2 * n) / g;
    return r;
}

// ---------------------------------------------------------------------------
// Exact ensemble baselines (enumeration; g <= 4 at q = 3 scale)

/// <L(1/2+alpha)/L(1/2+beta)> over H_{2g+1}, from the exact L-polynomials.
inline double ensemble_ratio(const FieldSpec& F, int g, double alpha, double beta,
                             std::uint64_t budget = kDefaultBudget) {
    detail::enumeration_size(F, 2 * g + 1, budget);
    double ua = std::pow(static_cast<double>(F.q()), -0.5 - alpha);
    double ub = std::pow(static_cast<double>(F.q()), -0.5 - beta);
    double sum = 0;
    BigInt H = 0;
    for_each_hyperelliptic(F, 2 * g + 1, [&](const Poly& D) {
        H += 1;
        LPolynomial L = l_from_psi(F, D, psi_power_sums(F, D, g));
        sum += l_eval(L, ua) / l_eval(L, ub);
    });
    return sum / static_cast<double>(H);
}

/// <L'/L(1/2+r)> over H_{2g+1}, natural-log units: with u = q^{-s},
/// L'/L(s) = -(log q) u LL'(u)/LL(u).
inline double ensemble_logderiv(const FieldSpec& F, int g, double r,
                                std::uint64_t budget = kDefaultBudget) {
    detail::enumeration_size(F, 2 * g + 1, budget);
    double q = F.q(), logq = std::log(q);
    double u = std::pow(q, -0.5 - r);
    double sum = 0;
    BigInt H = 0;
    for_each_hyperelliptic(F, 2 * g + 1, [&](const Poly& D) {
        H += 1;
        LPolynomial L = l_from_psi(F, D, psi_power_sums(F, D, g));
        double val = 0, der = 0, up = 1;
        for (int n = 0; n <= 2 * g; ++n) {
            double c = static_cast<double>(L.coeffs[static_cast<std::size_t>(n)]);
            val += c * up;
            if (n >= 1) der += c * n * up / u;
            up *= u;
        }
        sum += -logq * u * der / val;
    });
    return sum / static_cast<double>(H);
}

} // namespace hyperell

#endif
