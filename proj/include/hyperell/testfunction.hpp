#ifndef HYPERELL_TESTFUNCTION_HPP
#define HYPERELL_TESTFUNCTION_HPP

#include "hyperell/numbers.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperell {

/// Even trigonometric polynomial Phi given by its Fourier coefficients
/// hat(n) = Phi^(n/2g), stored for n >= 0 (evenness supplies n < 0).
struct TestFunction {
    std::vector<Rational> coeffs; // index n = 0..N

    int support() const { return static_cast<int>(coeffs.size()) - 1; }

    Rational hat(int n) const {
        int a = std::abs(n);
        if (a >= static_cast<int>(coeffs.size())) return 0;
        return coeffs[static_cast<std::size_t>(a)];
    }

    double hat_d(int n) const {
        Rational r = hat(n);
        return static_cast<double>(numerator(r)) / static_cast<double>(denominator(r));
    }

    /// Phi(2g theta) = sum_{|n| <= N} hat(n) e(n theta).
    double phi_at(double theta) const {
        double v = hat_d(0);
        for (int n = 1; n <= support(); ++n)
            v += 2.0 * hat_d(n) * std::cos(2.0 * std::numbers::pi * n * theta);
        return v;
    }
};

inline TestFunction testfn_fejer(int M) {
    if (M < 1) throw std::domain_error("fejer: M must be >= 1");
    TestFunction tf;
    for (int n = 0; n < M; ++n) tf.coeffs.emplace_back(Rational(M - n, M));
    return tf;
}

inline TestFunction testfn_delta0() {
    TestFunction tf;
    tf.coeffs.emplace_back(1);
    return tf;
}

namespace detail {

inline Rational parse_rational_token(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        BigInt num(tok.substr(0, slash));
        BigInt den(tok.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }
    auto dot = tok.find('.');
    if (dot == std::string::npos) return Rational(BigInt(tok));
    std::string head = tok.substr(0, dot), tail = tok.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg || (!head.empty() && head[0] == '+')) head.erase(0, 1);
    if (head.empty()) head = "0";
    if (tail.empty()) tail = "0";
    BigInt scale = big_pow(10, tail.size());
    Rational v = Rational(BigInt(head) * scale + BigInt(tail), scale);
    return neg ? -v : v;
}

} // namespace detail

/// Plain-text coefficient files: lines "n value" with value a rational a/b
/// or a decimal; '#' starts a comment.
inline TestFunction testfn_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open test-function file: " + path);
    std::vector<std::pair<int, Rational>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string ntok, vtok;
        if (!(ls >> ntok)) continue;
        std::string extra;
        if (!(ls >> vtok) || (ls >> extra)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected \"n value\"");
        }
        try {
            std::size_t used = 0;
            int n = std::stoi(ntok, &used);
            if (used != ntok.size() || n < 0) throw std::invalid_argument(ntok);
            entries.emplace_back(n, detail::parse_rational_token(vtok));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed entry \"" + line + "\"");
        }
    }
    TestFunction tf;
    for (const auto& [n, v] : entries) {
        if (n >= static_cast<int>(tf.coeffs.size()))
            tf.coeffs.resize(static_cast<std::size_t>(n) + 1, 0);
        tf.coeffs[static_cast<std::size_t>(n)] = v;
    }
    return tf;
}

inline void testfn_save(const TestFunction& tf, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write test-function file: " + path);
    for (int n = 0; n <= tf.support(); ++n)
        out << n << ' ' << tf.hat(n) << '\n';
}

/// Dispatcher for CLI-style specs: "fejer:M", "delta0", "file:PATH".
inline TestFunction testfn_make(const std::string& spec) {
    if (spec == "delta0") return testfn_delta0();
    if (spec.rfind("fejer:", 0) == 0) return testfn_fejer(std::stoi(spec.substr(6)));
    if (spec.rfind("file:", 0) == 0) return testfn_from_file(spec.substr(5));
    throw std::invalid_argument("unknown test-function spec: " + spec);
}

} // namespace hyperell

#endif
