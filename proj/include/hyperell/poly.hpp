#ifndef HYPERELL_POLY_HPP
#define HYPERELL_POLY_HPP

#include "hyperell/field.hpp"
#include "hyperell/numbers.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperell {

/// Dense polynomial over F_q, little-endian coefficient codes.
/// Invariant: no trailing zero coefficients; empty vector is the zero polynomial.
struct Poly {
    std::vector<FqElem> c;

    Poly() = default;
    explicit Poly(std::vector<FqElem> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly from(const FieldSpec& F, std::initializer_list<long long> coeffs) {
        Poly f;
        for (long long v : coeffs) f.c.push_back(F.from_int(v));
        f.trim();
        return f;
    }

    static Poly constant(FqElem a) { return a ? Poly{std::vector<FqElem>{a}} : Poly{}; }
    static Poly x() { return Poly{std::vector<FqElem>{0, 1}}; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    FqElem leading() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    FqElem coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : 0;
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator<(const Poly& o) const { return c < o.c; } // for map keys only
};

inline Poly poly_add(const FieldSpec& F, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = F.add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
    r.trim();
    return r;
}

inline Poly poly_sub(const FieldSpec& F, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = F.sub(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
    r.trim();
    return r;
}

inline Poly poly_mul(const FieldSpec& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

inline Poly poly_scale(const FieldSpec& F, const Poly& a, FqElem s) {
    if (s == 0) return {};
    Poly r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    return r;
}

/// In-place remainder: a := a mod b. b must be nonzero.
inline void poly_rem_inplace(const FieldSpec& F, Poly& a, const Poly& b) {
    int db = b.degree();
    FqElem lead_inv = F.inv(b.leading());
    while (a.degree() >= db) {
        int da = a.degree();
        FqElem c = F.mul(a.c[static_cast<std::size_t>(da)], lead_inv);
        for (int j = 0; j <= db; ++j) {
            auto& ref = a.c[static_cast<std::size_t>(da - db + j)];
            ref = F.sub(ref, F.mul(c, b.c[static_cast<std::size_t>(j)]));
        }
        a.trim();
    }
}

/// Division with remainder: f = s*h + r, deg r < deg h.
inline std::pair<Poly, Poly> poly_divrem(const FieldSpec& F, const Poly& f, const Poly& h) {
    if (h.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = f, s;
    int dh = h.degree();
    if (f.degree() >= dh) s.c.assign(static_cast<std::size_t>(f.degree() - dh) + 1, 0);
    FqElem lead_inv = F.inv(h.leading());
    while (r.degree() >= dh) {
        int dr = r.degree();
        FqElem c = F.mul(r.c[static_cast<std::size_t>(dr)], lead_inv);
        s.c[static_cast<std::size_t>(dr - dh)] = c;
        for (int j = 0; j <= dh; ++j) {
            auto& ref = r.c[static_cast<std::size_t>(dr - dh + j)];
            ref = F.sub(ref, F.mul(c, h.c[static_cast<std::size_t>(j)]));
        }
        r.trim();
    }
    s.trim();
    return {s, r};
}

inline Poly poly_mod(const FieldSpec& F, Poly f, const Poly& h) {
    if (h.is_zero()) throw std::domain_error("polynomial division by zero");
    poly_rem_inplace(F, f, h);
    return f;
}

inline Poly poly_monic(const FieldSpec& F, const Poly& f) {
    if (f.is_zero() || f.is_monic()) return f;
    return poly_scale(F, f, F.inv(f.leading()));
}

/// Monic greatest common divisor.
inline Poly poly_gcd(const FieldSpec& F, Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        poly_rem_inplace(F, a, b);
        std::swap(a, b);
    }
    return poly_monic(F, a);
}

/// Formal derivative, characteristic-p aware.
inline Poly poly_derivative(const FieldSpec& F, const Poly& f) {
    Poly r;
    if (f.degree() < 1) return r;
    r.c.resize(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i)
        r.c[i - 1] = F.mul(f.c[i], F.from_int(static_cast<long long>(i)));
    r.trim();
    return r;
}

inline FqElem poly_eval(const FieldSpec& F, const Poly& f, FqElem a) {
    FqElem r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = F.add(F.mul(r, a), f.c[i]);
    return r;
}

inline Poly poly_mulmod(const FieldSpec& F, const Poly& a, const Poly& b, const Poly& m) {
    Poly r = poly_mul(F, a, b);
    poly_rem_inplace(F, r, m);
    return r;
}

inline Poly poly_powmod(const FieldSpec& F, Poly base, BigInt e, const Poly& m) {
    Poly r = Poly::constant(1);
    poly_rem_inplace(F, base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mulmod(F, r, base, m);
        base = poly_mulmod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

/// True iff no irreducible square divides f. gcd(f, 0) = f handles the
/// vanishing-derivative case (f a p-th power) uniformly.
inline bool is_squarefree(const FieldSpec& F, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("is_squarefree(0) is undefined");
    if (f.degree() == 0) return true;
    Poly d = poly_derivative(F, f);
    if (d.is_zero()) return false;
    return poly_gcd(F, f, d).degree() == 0;
}

/// Membership in the set of monic irreducibles: x^{q^d} = x (mod P) and
/// gcd(x^{q^{d/l}} - x, P) = 1 for every prime l | d.
inline bool is_irreducible(const FieldSpec& F, const Poly& P) {
    if (!P.is_monic() || P.degree() < 1)
        throw std::domain_error("is_irreducible requires a monic polynomial of degree >= 1");
    int d = P.degree();
    if (d == 1) return true;
    Poly t = poly_mod(F, Poly::x(), P);
    std::vector<Poly> frob(static_cast<std::size_t>(d) + 1); // frob[i] = x^{q^i} mod P
    frob[0] = t;
    for (int i = 1; i <= d; ++i)
        frob[static_cast<std::size_t>(i)] =
            poly_powmod(F, frob[static_cast<std::size_t>(i - 1)], F.q(), P);
    if (!(frob[static_cast<std::size_t>(d)] == t)) return false;
    for (int l = 2; l <= d; ++l) {
        if (d % l != 0) continue;
        bool lprime = true;
        for (int m = 2; m * m <= l; ++m)
            if (l % m == 0) { lprime = false; break; }
        if (!lprime) continue;
        Poly diff = poly_sub(F, frob[static_cast<std::size_t>(d / l)], t);
        if (diff.is_zero() || poly_gcd(F, diff, P).degree() != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Enumeration of monic polynomials, lexicographic on coefficient vectors
// with the constant term as the fastest digit.

inline BigInt monic_count(const FieldSpec& F, int n) { return big_pow(F.q(), static_cast<std::uint64_t>(n)); }

/// The idx-th monic polynomial of degree n (idx in [0, q^n)).
inline void monic_by_index(const FieldSpec& F, int n, std::uint64_t idx, Poly& out) {
    out.c.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        out.c[static_cast<std::size_t>(i)] = static_cast<FqElem>(idx % F.q());
        idx /= F.q();
    }
    out.c[static_cast<std::size_t>(n)] = 1;
}

template <class Fn>
inline void for_each_monic(const FieldSpec& F, int n, Fn&& fn) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= F.q();
    Poly f;
    f.c.assign(static_cast<std::size_t>(n) + 1, 0);
    f.c[static_cast<std::size_t>(n)] = 1;
    for (std::uint64_t idx = 0;; ++idx) {
        fn(const_cast<const Poly&>(f));
        if (idx + 1 == total) break;
        // base-q odometer, constant term fastest
        for (int i = 0; i < n; ++i) {
            auto& digit = f.c[static_cast<std::size_t>(i)];
            if (static_cast<std::uint32_t>(digit) + 1 < F.q()) {
                ++digit;
                break;
            }
            digit = 0;
        }
    }
}

/// All q^n polynomials of degree < n (residues mod a degree-n modulus).
template <class Fn>
inline void for_each_poly_below(const FieldSpec& F, int n, Fn&& fn) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= F.q();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly u;
        std::uint64_t t = idx;
        for (int i = 0; i < n; ++i) {
            u.c.push_back(static_cast<FqElem>(t % F.q()));
            t /= F.q();
        }
        u.trim();
        fn(const_cast<const Poly&>(u));
    }
}

/// |H_d|: number of monic square-free polynomials of degree d.
inline BigInt hyperelliptic_cardinality(const FieldSpec& F, int d) {
    if (d < 0) throw std::domain_error("hyperelliptic_cardinality: d must be >= 0");
    if (d == 0) return 1;
    if (d == 1) return F.q();
    return big_pow(F.q(), static_cast<std::uint64_t>(d - 1)) * (F.q() - 1);
}

template <class Fn>
inline void for_each_hyperelliptic(const FieldSpec& F, int d, Fn&& fn) {
    for_each_monic(F, d, [&](const Poly& f) {
        if (is_squarefree(F, f)) fn(f);
    });
}

// ---------------------------------------------------------------------------
// Counting functions and factorization

/// Prime Polynomial Theorem: pi_q(n) = (1/n) sum_{d|n} mu(d) q^{n/d}.
inline BigInt pi_q(std::uint32_t q, std::uint64_t n) {
    if (n == 0) throw std::domain_error("pi_q requires n >= 1");
    BigInt s = 0;
    for (auto d : divisors_of(n)) s += mobius_int(d) * big_pow(q, n / d);
    return s / static_cast<long long>(n);
}

/// Closed form for sum_{f monic, deg n} Lambda(f)^2:
/// n sum_{d|n} (alpha(d)/d) q^{n/d}, an integer.
inline BigInt lambda_square_sum(std::uint32_t q, std::uint64_t n) {
    if (n == 0) throw std::domain_error("lambda_square_sum requires n >= 1");
    BigInt s = 0;
    for (auto d : divisors_of(n))
        s += BigInt(static_cast<long long>(n / d) * alpha_factor(d)) * big_pow(q, n / d);
    return s;
}

/// Shared cache of monic irreducibles by degree, built once per field.
inline const std::vector<Poly>& irreducible_polys(const FieldSpec& F, int n) {
    static std::map<std::pair<std::string, int>, std::vector<Poly>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(F.to_string(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Poly> v;
    for_each_monic(F, n, [&](const Poly& f) {
        if (is_irreducible(F, f)) v.push_back(f);
    });
    return cache.emplace(std::move(key), std::move(v)).first->second;
}

/// Factorization of the monic part into (irreducible, exponent) pairs,
/// by trial division at these tiny degrees.
inline std::vector<std::pair<Poly, int>> factorize(const FieldSpec& F, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorize(0) is undefined");
    Poly rest = poly_monic(F, f);
    std::vector<std::pair<Poly, int>> out;
    for (int d = 1; rest.degree() >= 1 && 2 * d <= rest.degree(); ++d) {
        for (const Poly& P : irreducible_polys(F, d)) {
            if (rest.degree() < 2 * d) break;
            int e = 0;
            for (;;) {
                auto [s, r] = poly_divrem(F, rest, P);
                if (!r.is_zero()) break;
                rest = s;
                ++e;
            }
            if (e) out.emplace_back(P, e);
        }
    }
    if (rest.degree() >= 1) out.emplace_back(rest, 1);
    return out;
}

struct ArithValues {
    int lambda; // von Mangoldt weight: d(P) if f = c P^k, else 0
    int mu;     // (-1)^{#primes} if square-free, else 0
};

inline ArithValues arith_functions(const FieldSpec& F, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("arith_functions(0) is undefined");
    if (f.degree() == 0) return {0, 1};
    auto fac = factorize(F, f);
    ArithValues v{0, 0};
    if (fac.size() == 1) v.lambda = fac[0].first.degree();
    bool sqfree = true;
    for (auto& [P, e] : fac)
        if (e > 1) { sqfree = false; break; }
    if (sqfree) v.mu = (fac.size() % 2 == 0) ? 1 : -1;
    return v;
}

} // namespace hyperell

#endif
