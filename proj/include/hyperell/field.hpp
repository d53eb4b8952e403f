#ifndef HYPERELL_FIELD_HPP
#define HYPERELL_FIELD_HPP

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperell {

/// Element of F_q, encoded as an integer in [0, q).
/// The code is the base-p digit expansion of the coordinate vector
/// (1, t, ..., t^{k-1}), constant coordinate in the least significant digit.
using FqElem = std::uint16_t;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

/// The base field F_q, q = p^k with p an odd prime. For k > 1 the field is
/// F_p[t]/(modulus) with a user-supplied monic irreducible modulus.
/// All arithmetic is table-driven; elements are plain integer codes.
class FieldSpec {
public:
    /// Prime field F_p.
    explicit FieldSpec(std::uint32_t p) : FieldSpec(p, {}) {}

    /// Extension field F_p[t]/(modulus). modulus holds k+1 coefficients
    /// over F_p, little-endian, leading coefficient 1.
    FieldSpec(std::uint32_t p, std::vector<std::uint16_t> modulus)
        : p_(p), modulus_(std::move(modulus)) {
        if (!detail::is_prime_u32(p_) || p_ == 2)
            throw std::domain_error("field characteristic must be an odd prime, got " +
                                    std::to_string(p_));
        if (modulus_.empty()) {
            k_ = 1;
        } else {
            if (modulus_.size() < 2 || modulus_.back() != 1)
                throw std::domain_error("field modulus must be monic of degree >= 1");
            for (auto c : modulus_)
                if (c >= p_) throw std::domain_error("modulus coefficient out of range");
            k_ = static_cast<std::uint32_t>(modulus_.size()) - 1;
            if (k_ == 1) {
                // F_p[t]/(t + c) is just F_p; normalize.
                modulus_.clear();
            } else if (!modulus_irreducible_()) {
                throw std::domain_error("field modulus is reducible over F_p");
            }
        }
        q_ = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            q_ *= p_;
            if (q_ > kMaxQ) throw std::domain_error("field too large for table-driven arithmetic");
        }
        build_tables_();
    }

    /// Parse "p", a known prime power ("9", "25", "27"), or
    /// "p^k:c0,c1,...,1" giving the modulus coefficients.
    static FieldSpec parse(const std::string& s) {
        auto caret = s.find('^');
        if (caret == std::string::npos) {
            std::uint32_t n = parse_u32_(s);
            if (n == 9) return FieldSpec(3, {1, 0, 1});          // t^2 + 1
            if (n == 25) return FieldSpec(5, {2, 0, 1});         // t^2 + 2
            if (n == 27) return FieldSpec(3, {1, 2, 0, 1});      // t^3 + 2t + 1
            return FieldSpec(n);
        }
        auto colon = s.find(':', caret);
        if (colon == std::string::npos)
            throw std::domain_error("field spec \"" + s + "\": expected p^k:c0,c1,...,1");
        std::uint32_t p = parse_u32_(s.substr(0, caret));
        std::uint32_t k = parse_u32_(s.substr(caret + 1, colon - caret - 1));
        std::vector<std::uint16_t> mod;
        std::size_t pos = colon + 1;
        while (pos <= s.size()) {
            auto comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
            mod.push_back(static_cast<std::uint16_t>(parse_u32_(tok)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (mod.size() != k + 1)
            throw std::domain_error("field spec \"" + s + "\": modulus needs k+1 coefficients");
        return FieldSpec(p, std::move(mod));
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint16_t>& modulus() const { return modulus_; }

    /// Canonical spec string, usable as a cache key.
    std::string to_string() const {
        if (k_ == 1) return std::to_string(p_);
        std::string s = std::to_string(p_) + "^" + std::to_string(k_) + ":";
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(modulus_[i]);
        }
        return s;
    }

    FqElem zero() const { return 0; }
    FqElem one() const { return 1; }

    /// Embed an integer residue (the prime subfield).
    FqElem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<FqElem>(r);
    }

    FqElem add(FqElem a, FqElem b) const { return add_[a * q_ + b]; }
    FqElem sub(FqElem a, FqElem b) const { return add_[a * q_ + neg_[b]]; }
    FqElem neg(FqElem a) const { return neg_[a]; }
    FqElem mul(FqElem a, FqElem b) const { return mul_[a * q_ + b]; }

    FqElem inv(FqElem a) const {
        if (a == 0) throw std::domain_error("inversion of zero in F_q");
        return inv_[a];
    }

    FqElem pow(FqElem a, long long e) const {
        if (e < 0) return pow(inv(a), -e);
        FqElem r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    /// Tr_{F_q/F_p}(a) = sum a^{p^i}, returned as a residue mod p.
    std::uint16_t trace(FqElem a) const { return trace_[a]; }

    /// Quadratic character of F_q: 0 at 0, +1 on nonzero squares, -1 otherwise.
    int quad_char(FqElem a) const { return quad_[a]; }

    bool operator==(const FieldSpec& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

private:
    static constexpr std::uint32_t kMaxQ = 2048;

    static std::uint32_t parse_u32_(const std::string& s) {
        if (s.empty()) throw std::domain_error("empty number in field spec");
        std::uint32_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw std::domain_error("bad number in field spec: " + s);
            v = v * 10 + static_cast<std::uint32_t>(c - '0');
            if (v > 1000000) throw std::domain_error("number too large in field spec");
        }
        return v;
    }

    // Coordinates of a code, length k.
    std::vector<std::uint16_t> decode_(FqElem a) const {
        std::vector<std::uint16_t> v(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            v[i] = a % p_;
            a = static_cast<FqElem>(a / p_);
        }
        return v;
    }

    FqElem encode_(const std::vector<std::uint16_t>& v) const {
        std::uint32_t a = 0;
        for (std::uint32_t i = k_; i-- > 0;) a = a * p_ + (i < v.size() ? v[i] : 0);
        return static_cast<FqElem>(a);
    }

    // Modulus irreducibility over F_p by trial division (k is tiny).
    bool modulus_irreducible_() const {
        std::uint32_t k = static_cast<std::uint32_t>(modulus_.size()) - 1;
        // Enumerate monic divisors of degree 1..k/2.
        for (std::uint32_t d = 1; 2 * d <= k; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::uint16_t> div(d + 1, 0);
                std::uint64_t t = idx;
                for (std::uint32_t i = 0; i < d; ++i) {
                    div[i] = static_cast<std::uint16_t>(t % p_);
                    t /= p_;
                }
                div[d] = 1;
                if (fp_rem_is_zero_(modulus_, div)) return false;
            }
        }
        return true;
    }

    bool fp_rem_is_zero_(std::vector<std::uint16_t> a,
                         const std::vector<std::uint16_t>& b) const {
        int db = static_cast<int>(b.size()) - 1;
        for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
            std::uint32_t c = a[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) {
                auto& ref = a[static_cast<std::size_t>(i - db + j)];
                std::uint32_t prod = c * b[static_cast<std::size_t>(j)] % p_;
                ref = static_cast<std::uint16_t>((ref + p_ - prod) % p_);
            }
        }
        for (int i = 0; i < db; ++i)
            if (a[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    }

    FqElem raw_mul_(FqElem a, FqElem b) const {
        if (k_ == 1) return static_cast<FqElem>(static_cast<std::uint32_t>(a) * b % p_);
        auto va = decode_(a), vb = decode_(b);
        std::vector<std::uint16_t> prod(2 * k_ - 1, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                prod[i + j] = static_cast<std::uint16_t>(
                    (prod[i + j] + static_cast<std::uint32_t>(va[i]) * vb[j]) % p_);
        // Reduce by the monic modulus.
        for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
            std::uint32_t c = prod[i];
            if (c) {
                for (std::uint32_t j = 0; j <= k_; ++j) {
                    std::uint32_t pos = i - k_ + j;
                    std::uint32_t sub = c * modulus_[j] % p_;
                    prod[pos] = static_cast<std::uint16_t>((prod[pos] + p_ - sub) % p_);
                }
            }
            if (i == k_) break;
        }
        prod.resize(k_);
        return encode_(prod);
    }

    void build_tables_() {
        add_.resize(static_cast<std::size_t>(q_) * q_);
        mul_.resize(static_cast<std::size_t>(q_) * q_);
        neg_.resize(q_);
        inv_.resize(q_);
        quad_.resize(q_);
        trace_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto va = decode_(static_cast<FqElem>(a));
            for (auto& c : va) c = static_cast<std::uint16_t>((p_ - c) % p_);
            neg_[a] = encode_(va);
        }
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto va = decode_(static_cast<FqElem>(a));
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto vb = decode_(static_cast<FqElem>(b));
                std::vector<std::uint16_t> vs(k_);
                for (std::uint32_t i = 0; i < k_; ++i)
                    vs[i] = static_cast<std::uint16_t>((va[i] + vb[i]) % p_);
                add_[static_cast<std::size_t>(a) * q_ + b] = encode_(vs);
                mul_[static_cast<std::size_t>(a) * q_ + b] =
                    raw_mul_(static_cast<FqElem>(a), static_cast<FqElem>(b));
            }
        }
        inv_[0] = 0;
        for (std::uint32_t a = 1; a < q_; ++a)
            for (std::uint32_t b = 1; b < q_; ++b)
                if (mul_[static_cast<std::size_t>(a) * q_ + b] == 1) {
                    inv_[a] = static_cast<FqElem>(b);
                    break;
                }
        // chi_q(a) = a^{(q-1)/2} in {0, 1, -1}.
        for (std::uint32_t a = 0; a < q_; ++a) {
            if (a == 0) {
                quad_[a] = 0;
            } else {
                FqElem r = pow(static_cast<FqElem>(a), (q_ - 1) / 2);
                quad_[a] = (r == 1) ? 1 : -1;
            }
        }
        for (std::uint32_t a = 0; a < q_; ++a) {
            FqElem s = 0;
            FqElem t = static_cast<FqElem>(a);
            for (std::uint32_t i = 0; i < k_; ++i) {
                s = add(s, t);
                t = pow(t, p_);
            }
            // Tr lands in the prime subfield, whose codes are 0..p-1.
            trace_[a] = s;
        }
    }

    std::uint32_t p_, k_ = 1, q_ = 0;
    std::vector<std::uint16_t> modulus_;
    std::vector<FqElem> add_, mul_, neg_, inv_, trace_;
    std::vector<std::int8_t> quad_;
};

} // namespace hyperell

#endif
