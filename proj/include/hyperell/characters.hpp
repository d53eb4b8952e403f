#ifndef HYPERELL_CHARACTERS_HPP
#define HYPERELL_CHARACTERS_HPP

#include "hyperell/poly.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

namespace hyperell {

using Complex = std::complex<double>;

/// Quadratic residue symbol (f/P) by the Euler criterion
/// f^{(|P|-1)/2} mod P, computed with square-and-multiply.
inline int residue_symbol(const FieldSpec& F, const Poly& f, const Poly& P) {
    if (!is_irreducible(F, P))
        throw std::domain_error("residue_symbol: modulus is not irreducible");
    Poly r = poly_mod(F, f, P);
    if (r.is_zero()) return 0;
    BigInt e = (big_pow(F.q(), static_cast<std::uint64_t>(P.degree())) - 1) / 2;
    Poly v = poly_powmod(F, r, e, P);
    if (v.degree() != 0 || (v.c[0] != 1 && v.c[0] != F.neg(1)))
        throw std::logic_error("residue_symbol: Euler criterion not +-1");
    return v.c[0] == 1 ? 1 : -1;
}

/// Jacobi symbol (f/Q) for monic Q of degree >= 1, computed without
/// factoring Q via the quadratic reciprocity ladder. Leading coefficients
/// are stripped with (c/Q) = chi_q(c)^{d(Q)}.
inline int jacobi_symbol(const FieldSpec& F, Poly f, Poly Q) {
    if (!Q.is_monic() || Q.degree() < 1)
        throw std::domain_error("jacobi_symbol: modulus must be monic of degree >= 1");
    const bool q3mod4 = ((F.q() - 1) / 2) % 2 == 1;
    int result = 1;
    poly_rem_inplace(F, f, Q);
    for (;;) {
        if (f.is_zero()) return 0;
        FqElem lead = f.leading();
        if (lead != 1) {
            if (Q.degree() % 2 == 1 && F.quad_char(lead) == -1) result = -result;
            f = poly_scale(F, f, F.inv(lead));
        }
        if (f.degree() == 0) return result;
        if (q3mod4 && f.degree() % 2 == 1 && Q.degree() % 2 == 1) result = -result;
        poly_rem_inplace(F, Q, f);
        std::swap(f, Q);
    }
}

/// chi_D(f) = (D/f) for monic D, completely multiplicative in f.
/// Non-monic f = c*m uses chi_D(c) = chi_q(c)^{d(D)}.
inline int chi_D(const FieldSpec& F, const Poly& D, const Poly& f) {
    if (!D.is_monic()) throw std::domain_error("chi_D: D must be monic");
    if (f.is_zero()) return 0;
    int result = 1;
    FqElem lead = f.leading();
    if (lead != 1 && D.degree() % 2 == 1 && F.quad_char(lead) == -1) result = -result;
    if (f.degree() == 0) return result;
    Poly m = poly_monic(F, f);
    return result * jacobi_symbol(F, D, m);
}

/// The character mod f evaluated at u: (u/f). Arbitrary u, monic f.
inline int chi_mod(const FieldSpec& F, const Poly& u, const Poly& f) {
    if (f.degree() == 0) return 1; // trivial character
    if (u.is_zero()) return 0;
    int result = 1;
    FqElem lead = u.leading();
    if (lead != 1 && f.degree() % 2 == 1 && F.quad_char(lead) == -1) result = -result;
    if (u.degree() == 0) return result;
    return result * jacobi_symbol(F, poly_monic(F, u), f);
}

/// e(a) = exp(2 pi i Tr_{F_q/F_p}(a_1) / p) for the 1/x-coefficient a_1.
inline Complex additive_e(const FieldSpec& F, FqElem a1) {
    double t = 2.0 * std::numbers::pi * F.trace(a1) / F.p();
    return {std::cos(t), std::sin(t)};
}

/// tau(q) = sum_{a in F_q} chi_q(a) e(a), by direct summation.
inline Complex tau_q_direct(const FieldSpec& F) {
    Complex s = 0;
    for (std::uint32_t a = 0; a < F.q(); ++a)
        s += static_cast<double>(F.quad_char(static_cast<FqElem>(a))) *
             additive_e(F, static_cast<FqElem>(a));
    return s;
}

/// tau(q) from the Hasse-Davenport relation (-1)^{k-1} tau(p)^k,
/// with tau(p) = sqrt(p) or i sqrt(p) according to p mod 4.
inline Complex tau_q_hasse_davenport(const FieldSpec& F) {
    Complex tau_p = (F.p() % 4 == 1) ? Complex(std::sqrt(double(F.p())), 0)
                                     : Complex(0, std::sqrt(double(F.p())));
    Complex t = 1;
    for (std::uint32_t i = 0; i < F.k(); ++i) t *= tau_p;
    if (F.k() % 2 == 0) t = -t;
    return t;
}

/// epsilon(q) in {-1, +1}; cross-validates the direct summation for tau(q)
/// against the Hasse-Davenport closed form.
inline int epsilon_q(const FieldSpec& F) {
    Complex tau = tau_q_direct(F);
    Complex tau_hd = tau_q_hasse_davenport(F);
    if (std::abs(tau - tau_hd) > 1e-9 * std::sqrt(double(F.q())))
        throw std::logic_error("epsilon_q: tau(q) routes disagree");
    double sq = std::sqrt(double(F.q()));
    Complex eps = (F.q() % 4 == 1) ? tau / sq : Complex(0, -1) * tau / sq;
    if (std::abs(eps.imag()) > 1e-9 || std::abs(std::abs(eps.real()) - 1.0) > 1e-9)
        throw std::logic_error("epsilon_q: epsilon is not +-1");
    return eps.real() > 0 ? 1 : -1;
}

/// Generalized Gauss sum
/// G(V, chi_f) = ((-1)^{(q-1)d(f)/2} (1+i)/2 + (1-i)/2) sum_{u mod f} chi_f(u) e(uV/f).
/// For monic f the 1/x-coefficient of uV/f is the x^{d(f)-1} coefficient of uV mod f.
inline Complex gauss_sum(const FieldSpec& F, const Poly& V, const Poly& f) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::domain_error("gauss_sum: modulus must be monic of degree >= 1");
    int n = f.degree();
    bool sign_neg = (((F.q() - 1) / 2) % 2 == 1) && (n % 2 == 1);
    Complex pref = sign_neg ? Complex(0, -1) : Complex(1, 0);
    Complex sum = 0;
    for_each_poly_below(F, n, [&](const Poly& u) {
        int chi = chi_mod(F, u, f);
        if (chi == 0) return;
        Poly r = poly_mod(F, poly_mul(F, u, V), f);
        sum += static_cast<double>(chi) * additive_e(F, r.coeff(n - 1));
    });
    return pref * sum;
}

/// Closed form of G(V, chi_{P^j}) for P monic irreducible (six cases,
/// split on j vs alpha = v_P(V) and parities).
inline Complex gauss_sum_closed(const FieldSpec& F, const Poly& V, const Poly& P, int j) {
    if (!is_irreducible(F, P)) throw std::domain_error("gauss_sum_closed: P must be irreducible");
    if (j < 1) throw std::domain_error("gauss_sum_closed: j must be >= 1");
    int alpha;
    Poly V1 = V;
    if (V.is_zero()) {
        alpha = j + 1; // treat as v_P(0) = infinity
    } else {
        alpha = 0;
        for (;;) {
            auto [s, r] = poly_divrem(F, V1, P);
            if (!r.is_zero()) break;
            V1 = s;
            ++alpha;
        }
    }
    double norm = std::pow(double(F.q()), P.degree());
    if (j >= alpha + 2) return 0;
    if (j <= alpha) {
        if (j % 2 == 1) return 0;
        return std::pow(norm, j) - std::pow(norm, j - 1); // phi(P^j)
    }
    // j == alpha + 1
    if (j % 2 == 0) return -std::pow(norm, j - 1);
    double mag = std::pow(norm, j - 0.5);
    double chi = chi_mod(F, V1, P);
    if (P.degree() % 2 == 0) return chi * mag;
    return epsilon_q(F) * chi * mag;
}

/// chi_f(h) = (f/h) with f in the numerator, the convention under which
/// chi_D(g) = (D/g) defines the quadratic character attached to D.
inline int chi_over(const FieldSpec& F, const Poly& f, const Poly& h) {
    if (h.degree() == 0) return 1;        // (f/1) = 1
    if (f.degree() == 0 && !f.is_zero()) {
        // constant numerator c: (c/h) = chi_q(c)^{d(h)}
        if (h.degree() % 2 == 1 && F.quad_char(f.c[0]) == -1) return -1;
        return 1;
    }
    return jacobi_symbol(F, f, h);
}

namespace detail {

// Enumerate exponent tuples for C | f^infty with 2 d(C) <= bound, summing
// chi_f(h) = (f/h) over the complementary h-range.
inline long long lemma31_inner(const FieldSpec& F, const Poly& f,
                               const std::vector<int>& prime_degs, int M) {
    long long total = 0;
    std::vector<int> expo(prime_degs.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int degC) {
        if (2 * degC > M) return;
        if (i == prime_degs.size()) {
            int hdeg = M - 2 * degC;
            for_each_monic(F, hdeg, [&](const Poly& h) { total += chi_over(F, f, h); });
            return;
        }
        for (int e = 0;; ++e) {
            int d = degC + e * prime_degs[i];
            if (2 * d > M) break;
            rec(i + 1, d);
        }
    };
    rec(0, 0);
    return total;
}

} // namespace detail

struct Lemma31Result {
    long long lhs; // sum over H_{2g+1} of chi_D(f)
    long long rhs; // the character-sum identity evaluated independently
};

/// Executable check of the ensemble character-sum identity (both sides exact).
inline Lemma31Result verify_lemma31(const FieldSpec& F, const Poly& f, int g) {
    if (!f.is_monic()) throw std::domain_error("verify_lemma31: f must be monic");
    long long lhs = 0;
    for_each_hyperelliptic(F, 2 * g + 1, [&](const Poly& D) {
        lhs += (f.degree() == 0) ? 1 : chi_D(F, D, f);
    });
    std::vector<int> prime_degs;
    if (f.degree() >= 1)
        for (auto& [P, e] : factorize(F, f)) prime_degs.push_back(P.degree());
    long long s_plus = detail::lemma31_inner(F, f, prime_degs, 2 * g + 1);
    long long s_minus = detail::lemma31_inner(F, f, prime_degs, 2 * g - 1);
    bool sign_neg = (((F.q() - 1) / 2) % 2 == 1) && (f.degree() % 2 == 1);
    long long rhs = s_plus - static_cast<long long>(F.q()) * s_minus;
    if (sign_neg) rhs = -rhs;
    return {lhs, rhs};
}

struct PoissonResult {
    long long direct;                   // sum over M_m of chi_f(h), exact
    Complex poisson;                    // Poisson-route value via Gauss sums
    std::optional<Complex> poisson_prime; // the irreducible-modulus specialization
};

/// Evaluates both sides of the Poisson summation formulas for chi_f.
inline PoissonResult verify_poisson(const FieldSpec& F, const Poly& f, int m) {
    int n = f.degree();
    if (!f.is_monic() || n < 1) throw std::domain_error("verify_poisson: f must be monic, deg >= 1");
    if (m < 0 || m >= n) throw std::domain_error("verify_poisson: need 0 <= m < d(f)");

    long long direct = 0;
    for_each_monic(F, m, [&](const Poly& h) { direct += chi_mod(F, h, f); });

    double qd = F.q();
    double fnorm = std::pow(qd, n);
    Complex poisson;
    if (n % 2 == 0) {
        Complex s = gauss_sum(F, Poly{}, f);
        for (int dv = 0; dv <= n - m - 2; ++dv)
            for_each_monic(F, dv, [&](const Poly& V) { s += (qd - 1) * gauss_sum(F, V, f); });
        for_each_monic(F, n - m - 1, [&](const Poly& V) { s -= gauss_sum(F, V, f); });
        poisson = std::pow(qd, m) / fnorm * s;
    } else {
        Complex s = 0;
        for_each_monic(F, n - m - 1, [&](const Poly& V) { s += gauss_sum(F, V, f); });
        poisson = double(epsilon_q(F)) * std::pow(qd, m + 0.5) / fnorm * s;
    }

    std::optional<Complex> prime;
    if (is_irreducible(F, f)) {
        double sqnorm = std::sqrt(fnorm);
        if (n % 2 == 0) {
            double s = 0;
            for (int dv = 0; dv <= n - m - 2; ++dv)
                for_each_monic(F, dv, [&](const Poly& V) { s += (qd - 1) * chi_mod(F, V, f); });
            for_each_monic(F, n - m - 1, [&](const Poly& V) { s -= chi_mod(F, V, f); });
            prime = std::pow(qd, m) / sqnorm * s;
        } else {
            double s = 0;
            for_each_monic(F, n - m - 1, [&](const Poly& V) { s += chi_mod(F, V, f); });
            prime = std::pow(qd, m + 0.5) / sqnorm * s;
        }
    }
    return {direct, poisson, prime};
}

} // namespace hyperell

#endif
