#ifndef HYPERELL_LFUNCTION_HPP
#define HYPERELL_LFUNCTION_HPP

#include "hyperell/characters.hpp"
#include "hyperell/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace hyperell {

/// L(u, chi_D) as an integer-coefficient polynomial of degree 2g,
/// c_n = sum over monic f of degree n of chi_D(f).
struct LPolynomial {
    Poly D;
    int g = 0;
    std::vector<BigInt> coeffs; // c_0 .. c_{2g}
};

struct ZeroSet {
    std::vector<double> angles;    // theta_j in [0,1), ascending, with multiplicity
    std::vector<double> residuals; // | |u_j| sqrt(q) - 1 | per zero
};

struct CentralValue {
    Rational A, B; // L(1/2, chi_D) = A + B sqrt(q)
    bool vanishing = false;
};

inline void require_hyperelliptic(const FieldSpec& F, const Poly& D) {
    if (!D.is_monic() || D.degree() % 2 != 1 || !is_squarefree(F, D))
        throw std::domain_error("D must be monic square-free of odd degree");
}

// ---------------------------------------------------------------------------
// Power sums psi_D(n) = sum_{f in M_n} Lambda(f) chi_D(f), exact integers,
// evaluated over the prime-power table (the only per-D cost is one Jacobi
// symbol per prime of degree <= N).

inline std::vector<long long> psi_power_sums(const FieldSpec& F, const Poly& D, int N) {
    std::vector<long long> psi(static_cast<std::size_t>(N) + 1, 0);
    for (int d = 1; d <= N; ++d) {
        for (const Poly& P : irreducible_polys(F, d)) {
            int s = jacobi_symbol(F, D, P);
            for (int r = 1; r * d <= N; ++r) {
                int v = (r % 2 == 1) ? s : (s != 0 ? 1 : 0);
                psi[static_cast<std::size_t>(r * d)] += static_cast<long long>(d) * v;
            }
        }
    }
    psi.erase(psi.begin()); // 1-based result: psi[0] is psi_D(1)
    return psi;
}

/// Newton recurrence: n c_n = sum_{i=1}^{n} psi_D(i) c_{n-i}, then the
/// functional equation fills c_n for n > g.
inline LPolynomial l_from_psi(const FieldSpec& F, const Poly& D,
                              const std::vector<long long>& psi1toG) {
    int g = (D.degree() - 1) / 2;
    LPolynomial L;
    L.D = D;
    L.g = g;
    L.coeffs.assign(static_cast<std::size_t>(2 * g) + 1, 0);
    L.coeffs[0] = 1;
    for (int n = 1; n <= g; ++n) {
        BigInt s = 0;
        for (int i = 1; i <= n; ++i)
            s += BigInt(psi1toG[static_cast<std::size_t>(i - 1)]) *
                 L.coeffs[static_cast<std::size_t>(n - i)];
        L.coeffs[static_cast<std::size_t>(n)] = s / n;
    }
    for (int n = 0; n < g; ++n)
        L.coeffs[static_cast<std::size_t>(2 * g - n)] =
            big_pow(F.q(), static_cast<std::uint64_t>(g - n)) * L.coeffs[static_cast<std::size_t>(n)];
    return L;
}

/// Exact character-sum coefficients for n <= g; the rest by the symmetry
/// c_{2g-n} = q^{g-n} c_n. full_summation computes every c_n directly and
/// verifies the symmetry (slow validation mode).
inline LPolynomial l_coefficients(const FieldSpec& F, const Poly& D, bool full_summation = false) {
    require_hyperelliptic(F, D);
    int g = (D.degree() - 1) / 2;
    LPolynomial L;
    L.D = D;
    L.g = g;
    L.coeffs.assign(static_cast<std::size_t>(2 * g) + 1, 0);
    int direct_up_to = full_summation ? 2 * g : g;
    for (int n = 0; n <= direct_up_to; ++n) {
        long long c = 0;
        for_each_monic(F, n, [&](const Poly& f) {
            c += (n == 0) ? 1 : chi_D(F, D, f);
        });
        L.coeffs[static_cast<std::size_t>(n)] = c;
    }
    for (int n = 0; n < g; ++n) {
        BigInt sym = big_pow(F.q(), static_cast<std::uint64_t>(g - n)) *
                     L.coeffs[static_cast<std::size_t>(n)];
        auto& slot = L.coeffs[static_cast<std::size_t>(2 * g - n)];
        if (full_summation) {
            if (slot != sym)
                throw std::logic_error("functional-equation symmetry violated for c_" +
                                       std::to_string(2 * g - n));
        } else {
            slot = sym;
        }
    }
    return L;
}

/// psi_D(n) for 1 <= n <= 2g recovered from the coefficients (inverse of
/// the Newton recurrence); used for cross-checks.
inline std::vector<BigInt> psi_from_coeffs(const LPolynomial& L, int N) {
    std::vector<BigInt> psi(static_cast<std::size_t>(N), 0);
    for (int n = 1; n <= N; ++n) {
        BigInt s = n * (n <= 2 * L.g ? L.coeffs[static_cast<std::size_t>(n)] : BigInt(0));
        for (int i = 1; i < n; ++i)
            s -= psi[static_cast<std::size_t>(i - 1)] *
                 (n - i <= 2 * L.g ? L.coeffs[static_cast<std::size_t>(n - i)] : BigInt(0));
        psi[static_cast<std::size_t>(n - 1)] = s;
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Exact square-free structure over Q (Yun's algorithm); multiplicities are
// never decided numerically.

namespace ratpoly {

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const RatPoly& a) { return static_cast<int>(a.size()) - 1; }

inline RatPoly derivative(const RatPoly& a) {
    RatPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long long>(i));
    trim(r);
    return r;
}

inline void rem_inplace(RatPoly& a, const RatPoly& b) {
    int db = degree(b);
    while (degree(a) >= db) {
        Rational c = a.back() / b.back();
        int shift = degree(a) - db;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(shift + j)] -= c * b[static_cast<std::size_t>(j)];
        a.pop_back();
        trim(a);
    }
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.empty()) {
        rem_inplace(a, b);
        std::swap(a, b);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

inline RatPoly div_exact(const RatPoly& a, const RatPoly& b) {
    RatPoly r = a, s;
    int db = degree(b);
    s.assign(static_cast<std::size_t>(degree(a) - db) + 1, 0);
    while (degree(r) >= db) {
        Rational c = r.back() / b.back();
        int shift = degree(r) - db;
        s[static_cast<std::size_t>(shift)] = c;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(shift + j)] -= c * b[static_cast<std::size_t>(j)];
        r.pop_back();
        trim(r);
    }
    if (!r.empty()) throw std::logic_error("ratpoly::div_exact: nonzero remainder");
    return s;
}

inline RatPoly sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r = a;
    if (b.size() > r.size()) r.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

} // namespace ratpoly

/// One square-free factor of L(u) and the multiplicity of its roots.
struct SquarefreeFactor {
    ratpoly::RatPoly poly; // monic over Q
    int multiplicity;
};

inline std::vector<SquarefreeFactor> squarefree_decomposition(const LPolynomial& L) {
    using namespace ratpoly;
    RatPoly C;
    for (const auto& c : L.coeffs) C.emplace_back(c);
    trim(C);
    std::vector<SquarefreeFactor> out;
    if (degree(C) < 1) return out;
    RatPoly Cp = derivative(C);
    RatPoly G = gcd(C, Cp);
    RatPoly W = div_exact(C, G);
    RatPoly Y = div_exact(Cp, G);
    RatPoly Z = sub(Y, derivative(W));
    int i = 1;
    while (degree(W) > 0) {
        RatPoly Gi = Z.empty() ? W : gcd(W, Z);
        if (degree(Gi) > 0) {
            Rational lead = Gi.back();
            RatPoly monic = Gi;
            for (auto& c : monic) c /= lead;
            out.push_back({monic, i});
        }
        if (Z.empty()) break;
        W = div_exact(W, Gi);
        Y = div_exact(Z, Gi);
        Z = sub(Y, derivative(W));
        ++i;
    }
    return out;
}

/// Multiset of zero multiplicities (sums to 2g), decided exactly.
inline std::vector<int> multiplicity_profile(const LPolynomial& L) {
    std::vector<int> out;
    for (const auto& f : squarefree_decomposition(L))
        out.insert(out.end(), static_cast<std::size_t>(ratpoly::degree(f.poly)), f.multiplicity);
    std::sort(out.begin(), out.end());
    return out;
}

inline long long simple_zero_count(const LPolynomial& L) {
    long long n = 0;
    for (const auto& f : squarefree_decomposition(L))
        if (f.multiplicity == 1) n += ratpoly::degree(f.poly);
    return n;
}

// ---------------------------------------------------------------------------
// Root extraction: Aberth-Ehrlich simultaneous iteration, started on the
// circle |u| = q^{-1/2} where Weil's theorem puts every zero. Repeated roots
// are split off exactly first, so the iteration only ever sees simple roots.

namespace detail {

inline std::vector<std::complex<double>> aberth_roots(const std::vector<double>& coeffs,
                                                      double radius) {
    using C = std::complex<double>;
    int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<C> u(static_cast<std::size_t>(deg));
    for (int j = 0; j < deg; ++j) {
        double phase = 2.0 * std::numbers::pi * (j + 0.26242) / deg;
        u[static_cast<std::size_t>(j)] = std::polar(radius, phase);
    }
    auto eval = [&](C z, C& p, C& dp) {
        p = coeffs.back();
        dp = 0;
        for (int i = deg - 1; i >= 0; --i) {
            dp = dp * z + p;
            p = p * z + coeffs[static_cast<std::size_t>(i)];
        }
    };
    const int max_iter = 200;
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0;
        for (int j = 0; j < deg; ++j) {
            C p, dp;
            eval(u[static_cast<std::size_t>(j)], p, dp);
            C ratio = (dp == C(0)) ? C(0) : p / dp;
            C s = 0;
            for (int k = 0; k < deg; ++k)
                if (k != j) s += 1.0 / (u[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(k)]);
            C w = ratio / (1.0 - ratio * s);
            u[static_cast<std::size_t>(j)] -= w;
            worst = std::max(worst, std::abs(w));
        }
        if (worst < 1e-13 * (1.0 + radius)) return u;
    }
    // one more residual pass for the diagnostic
    double worst_res = 0;
    for (auto z : u) {
        C p, dp;
        eval(z, p, dp);
        worst_res = std::max(worst_res, std::abs(p));
    }
    throw std::runtime_error("aberth_roots: no convergence after 200 iterations, worst |p(u)| = " +
                             std::to_string(worst_res));
}

} // namespace detail

inline ZeroSet compute_zeros(const FieldSpec& F, const LPolynomial& L) {
    ZeroSet zs;
    if (L.g == 0) return zs;
    double sqrt_q = std::sqrt(static_cast<double>(F.q()));
    std::vector<std::pair<double, double>> zeros; // (theta, residual)
    for (const auto& factor : squarefree_decomposition(L)) {
        std::vector<double> coeffs;
        for (const auto& c : factor.poly)
            coeffs.push_back(static_cast<double>(numerator(c)) / static_cast<double>(denominator(c)));
        auto roots = detail::aberth_roots(coeffs, 1.0 / sqrt_q);
        for (auto u : roots) {
            double theta = std::arg(u) / (2.0 * std::numbers::pi);
            if (theta < 0) theta += 1.0;
            if (theta >= 1.0) theta -= 1.0;
            double residual = std::abs(std::abs(u) * sqrt_q - 1.0);
            for (int m = 0; m < factor.multiplicity; ++m) zeros.emplace_back(theta, residual);
        }
    }
    std::sort(zeros.begin(), zeros.end());
    for (auto& [t, r] : zeros) {
        zs.angles.push_back(t);
        zs.residuals.push_back(r);
    }
    return zs;
}

// ---------------------------------------------------------------------------
// Central point

inline CentralValue central_value(const FieldSpec& F, const LPolynomial& L) {
    int g = L.g;
    BigInt qg = big_pow(F.q(), static_cast<std::uint64_t>(g));
    BigInt a_num = 0, b_num = 0; // A q^g and B q^g
    for (int n = 0; n <= 2 * g; ++n) {
        const BigInt& c = L.coeffs[static_cast<std::size_t>(n)];
        if (n % 2 == 0)
            a_num += c * big_pow(F.q(), static_cast<std::uint64_t>(g - n / 2));
        else
            b_num += c * big_pow(F.q(), static_cast<std::uint64_t>(g - (n + 1) / 2));
    }
    CentralValue cv;
    cv.A = Rational(a_num, qg);
    cv.B = Rational(b_num, qg);
    std::uint32_t root = static_cast<std::uint32_t>(std::lround(std::sqrt(double(F.q()))));
    if (root * root == F.q()) {
        cv.vanishing = (a_num + root * b_num == 0);
    } else {
        cv.vanishing = (a_num == 0 && b_num == 0);
    }
    return cv;
}

/// Numeric L(u) at real u.
inline double l_eval(const LPolynomial& L, double u) {
    double v = 0, up = 1;
    for (const auto& c : L.coeffs) {
        v += static_cast<double>(c) * up;
        up *= u;
    }
    return v;
}

struct AfeValues {
    double lhs, rhs;
};

/// Approximate functional equation at s = 1/2 + alpha; exact for these
/// polynomial L-functions.
inline AfeValues afe_evaluate(const FieldSpec& F, const LPolynomial& L, double alpha) {
    if (std::abs(alpha) >= 0.25) throw std::domain_error("afe_evaluate: |alpha| must be < 1/4");
    double q = F.q();
    double lhs = 0;
    for (int n = 0; n <= 2 * L.g; ++n)
        lhs += static_cast<double>(L.coeffs[static_cast<std::size_t>(n)]) *
               std::pow(q, -n * (0.5 + alpha));
    double s1 = 0, s2 = 0;
    for (int n = 0; n <= L.g; ++n)
        s1 += static_cast<double>(L.coeffs[static_cast<std::size_t>(n)]) *
              std::pow(q, -n * (0.5 + alpha));
    for (int n = 0; n <= L.g - 1; ++n)
        s2 += static_cast<double>(L.coeffs[static_cast<std::size_t>(n)]) *
              std::pow(q, -n * (0.5 - alpha));
    double rhs = s1 + std::pow(q, -2.0 * L.g * alpha) * s2;
    return {lhs, rhs};
}

} // namespace hyperell

#endif
