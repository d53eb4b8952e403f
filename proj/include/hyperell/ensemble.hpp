#ifndef HYPERELL_ENSEMBLE_HPP
#define HYPERELL_ENSEMBLE_HPP

#include "hyperell/lfunction.hpp"
#include "hyperell/testfunction.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hyperell {

inline constexpr std::uint64_t kDefaultBudget = 4'000'000;

/// Exact integer ensemble aggregates over H_{2g+1}:
/// S1(n) = sum_D psi_D(n), S2(n) = sum_D psi_D(n)^2.
struct MomentCache {
    std::string field;
    int g = 0;
    int Nmax = 0;
    BigInt H = 0;
    std::vector<BigInt> S1, S2; // index n-1 for n = 1..Nmax
    BigInt nonvanishing = 0;    // #{D : L(1/2, chi_D) != 0}
    BigInt simple_zeros = 0;    // sum_D #{simple zeros of L(u, chi_D)}

    bool operator==(const MomentCache&) const = default;
};

// ---------------------------------------------------------------------------
// Ensemble accumulation: map-reduce over contiguous monic-index ranges.
// Workers own disjoint ranges and emit exact integer partials, so the result
// is independent of the partition.

namespace detail {

/// Square-free test for an integer polynomial, performed mod a word-sized
/// prime. A constant gcd mod p certifies a constant gcd over Q (the leading
/// coefficients q^g and 2g q^g are units mod p), so "true" is rigorous;
/// "false" falls back to the exact routine.
inline bool squarefree_mod_p(const std::vector<long long>& c) {
    constexpr long long p = 2147483647;
    auto mod = [&](long long v) { return ((v % p) + p) % p; };
    std::vector<long long> a(c.size()), b;
    for (std::size_t i = 0; i < c.size(); ++i) a[i] = mod(c[i]);
    for (std::size_t i = 1; i < c.size(); ++i)
        b.push_back(static_cast<long long>(static_cast<__int128>(i) * a[i] % p));
    auto trim = [](std::vector<long long>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv = [&](long long x) {
        long long r = 1, e = p - 2;
        __int128 base = x;
        while (e) {
            if (e & 1) r = static_cast<long long>(base * r % p);
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        long long lead_inv = inv(b.back());
        while (a.size() >= b.size()) {
            long long coef = static_cast<long long>(static_cast<__int128>(a.back()) * lead_inv % p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) {
                __int128 t = a[shift + j] - static_cast<__int128>(coef) * b[j] % p;
                a[shift + j] = static_cast<long long>(((t % p) + p) % p);
            }
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
    }
    return a.size() <= 1;
}

struct PrimeTable {
    std::vector<std::pair<const Poly*, int>> primes; // (prime, degree), degree <= N
    int N;
};

inline PrimeTable build_prime_table(const FieldSpec& F, int N) {
    PrimeTable t;
    t.N = N;
    for (int d = 1; d <= N; ++d)
        for (const Poly& P : irreducible_polys(F, d)) t.primes.emplace_back(&P, d);
    return t;
}

inline void psi_from_table(const FieldSpec& F, const Poly& D, const PrimeTable& t,
                           std::vector<long long>& psi) {
    psi.assign(static_cast<std::size_t>(t.N), 0);
    for (const auto& [P, d] : t.primes) {
        int s = jacobi_symbol(F, D, *P);
        for (int r = 1; r * d <= t.N; ++r) {
            int v = (r % 2 == 1) ? s : (s != 0 ? 1 : 0);
            psi[static_cast<std::size_t>(r * d - 1)] += static_cast<long long>(d) * v;
        }
    }
}

struct EnsemblePartial {
    std::vector<BigInt> S1, S2;
    BigInt H = 0, nonvanishing = 0, simple_zeros = 0;
};

inline void ensemble_range(const FieldSpec& F, int g, int Nmax, const PrimeTable& table,
                           std::uint64_t lo, std::uint64_t hi, EnsemblePartial& out) {
    int d = 2 * g + 1;
    out.S1.assign(static_cast<std::size_t>(Nmax), 0);
    out.S2.assign(static_cast<std::size_t>(Nmax), 0);
    Poly D;
    monic_by_index(F, d, lo, D);
    std::vector<long long> psi, c(static_cast<std::size_t>(2 * g) + 1, 0);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (idx != lo) {
            for (int i = 0; i < d; ++i) { // base-q odometer, constant term fastest
                auto& digit = D.c[static_cast<std::size_t>(i)];
                if (static_cast<std::uint32_t>(digit) + 1 < F.q()) {
                    ++digit;
                    break;
                }
                digit = 0;
            }
        }
        if (!is_squarefree(F, D)) continue;
        out.H += 1;
        psi_from_table(F, D, table, psi);
        for (int n = 1; n <= Nmax; ++n) {
            long long p = psi[static_cast<std::size_t>(n - 1)];
            out.S1[static_cast<std::size_t>(n - 1)] += p;
            out.S2[static_cast<std::size_t>(n - 1)] += p * p;
        }
        if (g == 0) {
            out.nonvanishing += 1; // L identically 1
            continue;
        }
        // Newton recurrence in native integers (all values fit at budget scale)
        c[0] = 1;
        for (int n = 1; n <= g; ++n) {
            long long s = 0;
            for (int i = 1; i <= n; ++i)
                s += psi[static_cast<std::size_t>(i - 1)] * c[static_cast<std::size_t>(n - i)];
            c[static_cast<std::size_t>(n)] = s / n;
        }
        long long qpow = 1;
        for (int n = g - 1; n >= 0; --n) {
            qpow *= F.q();
            c[static_cast<std::size_t>(2 * g - n)] = qpow * c[static_cast<std::size_t>(n)];
        }
        long long A = 0, B = 0; // q^g L(1/2) = A + B sqrt(q)
        {
            long long qa = 1, qb = 1;
            // exponents g - n/2 resp. g - (n+1)/2, walked from n = 2g resp. 2g-1
            for (int n = 2 * g; n >= 0; n -= 2) {
                A += c[static_cast<std::size_t>(n)] * qa;
                qa *= F.q();
            }
            for (int n = 2 * g - 1; n >= 1; n -= 2) {
                B += c[static_cast<std::size_t>(n)] * qb;
                qb *= F.q();
            }
        }
        std::uint32_t root = 1;
        while (root * root < F.q()) ++root;
        bool vanishing = (root * root == F.q()) ? (A + static_cast<long long>(root) * B == 0)
                                                : (A == 0 && B == 0);
        if (!vanishing) out.nonvanishing += 1;
        if (squarefree_mod_p(c)) {
            out.simple_zeros += 2 * g;
        } else {
            LPolynomial L;
            L.D = D;
            L.g = g;
            for (long long v : c) L.coeffs.emplace_back(v);
            out.simple_zeros += simple_zero_count(L);
        }
    }
}

inline std::uint64_t enumeration_size(const FieldSpec& F, int degree, std::uint64_t budget) {
    BigInt total = big_pow(F.q(), static_cast<std::uint64_t>(degree));
    if (total > budget)
        throw std::runtime_error("enumeration of " + total.str() +
                                 " polynomials exceeds the budget of " + std::to_string(budget));
    return static_cast<std::uint64_t>(total);
}

} // namespace detail

inline MomentCache accumulate_moments(const FieldSpec& F, int g, int Nmax, int threads = 1,
                                      std::uint64_t budget = kDefaultBudget) {
    if (Nmax < 1) throw std::domain_error("accumulate_moments: Nmax must be >= 1");
    if (g < 0) throw std::domain_error("accumulate_moments: g must be >= 0");
    if (threads < 1) threads = 1;
    std::uint64_t total = detail::enumeration_size(F, 2 * g + 1, budget);
    int table_N = std::max(Nmax, g);
    auto table = detail::build_prime_table(F, table_N);

    std::vector<detail::EnsemblePartial> partials(static_cast<std::size_t>(threads));
    if (threads == 1) {
        detail::ensemble_range(F, g, Nmax, table, 0, total, partials[0]);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            std::uint64_t lo = total / threads * w + std::min<std::uint64_t>(w, total % threads);
            std::uint64_t hi = lo + total / threads + (static_cast<std::uint64_t>(w) < total % threads ? 1 : 0);
            pool.emplace_back([&, w, lo, hi] {
                detail::ensemble_range(F, g, Nmax, table, lo, hi,
                                       partials[static_cast<std::size_t>(w)]);
            });
        }
        for (auto& t : pool) t.join();
    }

    MomentCache cache;
    cache.field = F.to_string();
    cache.g = g;
    cache.Nmax = Nmax;
    cache.S1.assign(static_cast<std::size_t>(Nmax), 0);
    cache.S2.assign(static_cast<std::size_t>(Nmax), 0);
    for (const auto& p : partials) {
        cache.H += p.H;
        cache.nonvanishing += p.nonvanishing;
        cache.simple_zeros += p.simple_zeros;
        for (int n = 0; n < Nmax; ++n) {
            cache.S1[static_cast<std::size_t>(n)] += p.S1[static_cast<std::size_t>(n)];
            cache.S2[static_cast<std::size_t>(n)] += p.S2[static_cast<std::size_t>(n)];
        }
    }
    if (cache.H != hyperelliptic_cardinality(F, 2 * g + 1))
        throw std::logic_error("accumulate_moments: |H| mismatch against the closed form");
    return cache;
}

// ---------------------------------------------------------------------------
// Per-D linear statistics, by each of the two routes. Sigma1 uses
// Phi(2g theta) = (1/2g) sum_{|n|<=N} hat(n) e(n theta); Sigma2 is the
// normalized double sum (1/2g) sum_{j,k} Phi(2g(theta_j - theta_k)).

inline double sigma1_from_zeros(const TestFunction& tf, const ZeroSet& zs, int g) {
    if (g == 0) return 0.0;
    double s = 0;
    for (double t : zs.angles) s += tf.phi_at(t);
    return s / (2.0 * g);
}

inline double sigma1_from_psi(const TestFunction& tf, const FieldSpec& F, int g,
                              const std::vector<long long>& psi) {
    if (g == 0) return 0.0;
    double s = tf.hat_d(0);
    for (int n = 1; n <= tf.support(); ++n)
        s -= tf.hat_d(n) * psi[static_cast<std::size_t>(n - 1)] *
             std::pow(static_cast<double>(F.q()), -n / 2.0) / g;
    return s;
}

inline double sigma2_from_zeros(const TestFunction& tf, const ZeroSet& zs, int g) {
    if (g == 0) return 0.0;
    double s = 0;
    for (double tj : zs.angles)
        for (double tk : zs.angles) s += tf.phi_at(tj - tk);
    return s / (2.0 * g) / (2.0 * g);
}

inline double sigma2_from_psi(const TestFunction& tf, const FieldSpec& F, int g,
                              const std::vector<long long>& psi) {
    if (g == 0) return 0.0;
    double s = tf.hat_d(0);
    for (int n = 1; n <= tf.support(); ++n) {
        double p = static_cast<double>(psi[static_cast<std::size_t>(n - 1)]);
        s += tf.hat_d(n) * p * p * std::pow(static_cast<double>(F.q()), -n) / (2.0 * g * g);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Ensemble averages

inline double one_level_average(const TestFunction& tf, const MomentCache& cache) {
    if (tf.support() > cache.Nmax)
        throw std::domain_error("test-function support exceeds cached Nmax");
    if (cache.g == 0) return 0.0;
    FieldSpec F = FieldSpec::parse(cache.field);
    double H = static_cast<double>(cache.H);
    double s = tf.hat_d(0);
    for (int n = 1; n <= tf.support(); ++n)
        s -= tf.hat_d(n) * std::pow(static_cast<double>(F.q()), -n / 2.0) *
             static_cast<double>(cache.S1[static_cast<std::size_t>(n - 1)]) / (cache.g * H);
    return s;
}

inline double pair_correlation_average(const TestFunction& tf, const MomentCache& cache) {
    if (tf.support() > cache.Nmax)
        throw std::domain_error("test-function support exceeds cached Nmax");
    if (cache.g == 0) return 0.0;
    FieldSpec F = FieldSpec::parse(cache.field);
    double H = static_cast<double>(cache.H);
    double s = tf.hat_d(0);
    for (int n = 1; n <= tf.support(); ++n)
        s += tf.hat_d(n) * std::pow(static_cast<double>(F.q()), -static_cast<double>(n)) *
             static_cast<double>(cache.S2[static_cast<std::size_t>(n - 1)]) /
             (2.0 * cache.g * cache.g * H);
    return s;
}

namespace detail {

template <class PerD>
inline double zero_route_average(const FieldSpec& F, int g, std::uint64_t budget, PerD&& per_d) {
    enumeration_size(F, 2 * g + 1, budget);
    if (g == 0) return 0.0;
    double sum = 0;
    BigInt H = 0;
    for_each_hyperelliptic(F, 2 * g + 1, [&](const Poly& D) {
        H += 1;
        auto psi = psi_power_sums(F, D, g);
        LPolynomial L = l_from_psi(F, D, psi);
        sum += per_d(compute_zeros(F, L));
    });
    return sum / static_cast<double>(H);
}

} // namespace detail

inline double one_level_average_zeros(const TestFunction& tf, const FieldSpec& F, int g,
                                      std::uint64_t budget = kDefaultBudget) {
    return detail::zero_route_average(F, g, budget, [&](const ZeroSet& zs) {
        return sigma1_from_zeros(tf, zs, g);
    });
}

inline double pair_correlation_zeros(const TestFunction& tf, const FieldSpec& F, int g,
                                     std::uint64_t budget = kDefaultBudget) {
    return detail::zero_route_average(F, g, budget, [&](const ZeroSet& zs) {
        return sigma2_from_zeros(tf, zs, g);
    });
}

// ---------------------------------------------------------------------------
// Exact character-sum identity: (1/|H_{2g+1}|) sum_D chi_D(P^{2r}), which
// counts the D coprime to P. The coprime count obeys
// count(m) = |H_m| - count(m - d(P)) with exact small-degree base cases.

inline Rational chi_square_ensemble_sum(const FieldSpec& F, const Poly& P, int g) {
    if (!is_irreducible(F, P)) throw std::domain_error("chi_square_ensemble_sum: P must be irreducible");
    int dP = P.degree();
    int m = 2 * g + 1;
    std::vector<BigInt> count(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        count[static_cast<std::size_t>(i)] = hyperelliptic_cardinality(F, i);
        if (i - dP >= 0) count[static_cast<std::size_t>(i)] -= count[static_cast<std::size_t>(i - dP)];
    }
    return Rational(count[static_cast<std::size_t>(m)], hyperelliptic_cardinality(F, m));
}

inline Rational nonvanishing_proportion(const MomentCache& cache) {
    return Rational(cache.nonvanishing, cache.H);
}

inline Rational simple_zero_proportion(const MomentCache& cache) {
    if (cache.g == 0) return 1;
    return Rational(cache.simple_zeros, 2 * cache.g * cache.H);
}

// ---------------------------------------------------------------------------
// Serialization: single JSON document, big integers as decimal strings,
// atomic write (temp file + rename). Cache key = (field, g, Nmax).

inline nlohmann::json moment_cache_to_json(const MomentCache& c) {
    nlohmann::json j;
    j["format"] = 1;
    j["field"] = c.field;
    j["g"] = c.g;
    j["Nmax"] = c.Nmax;
    j["H"] = c.H.str();
    auto strs = [](const std::vector<BigInt>& v) {
        std::vector<std::string> out;
        for (const auto& x : v) out.push_back(x.str());
        return out;
    };
    j["S1"] = strs(c.S1);
    j["S2"] = strs(c.S2);
    j["nonvanishing"] = c.nonvanishing.str();
    j["simple_zeros"] = c.simple_zeros.str();
    return j;
}

inline MomentCache moment_cache_from_json(const nlohmann::json& j) {
    if (!j.contains("format") || j["format"] != 1)
        throw std::runtime_error("moment cache: unsupported format tag");
    MomentCache c;
    c.field = j.at("field").get<std::string>();
    c.g = j.at("g").get<int>();
    c.Nmax = j.at("Nmax").get<int>();
    c.H = BigInt(j.at("H").get<std::string>());
    for (const auto& s : j.at("S1")) c.S1.emplace_back(BigInt(s.get<std::string>()));
    for (const auto& s : j.at("S2")) c.S2.emplace_back(BigInt(s.get<std::string>()));
    c.nonvanishing = BigInt(j.at("nonvanishing").get<std::string>());
    c.simple_zeros = BigInt(j.at("simple_zeros").get<std::string>());
    if (static_cast<int>(c.S1.size()) != c.Nmax || static_cast<int>(c.S2.size()) != c.Nmax)
        throw std::runtime_error("moment cache: S1/S2 length disagrees with Nmax");
    return c;
}

inline std::string moment_cache_filename(const std::string& field, int g, int Nmax) {
    std::string tag = field;
    for (auto& ch : tag)
        if (ch == '^' || ch == ':' || ch == ',') ch = '_';
    return "moments_q" + tag + "_g" + std::to_string(g) + "_N" + std::to_string(Nmax) + ".json";
}

inline void save_moment_cache(const MomentCache& c, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << moment_cache_to_json(c).dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

inline MomentCache load_moment_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open moment cache " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("corrupt moment cache " + path + ": " + e.what());
    }
    return moment_cache_from_json(j);
}

} // namespace hyperell

#endif
