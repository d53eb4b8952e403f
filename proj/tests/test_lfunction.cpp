#include "hyperell/lfunction.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hyperell;

namespace {
Poly running_D(const FieldSpec& F) { return Poly::from(F, {1, 2, 0, 1}); } // x^3 + 2x + 1
}

TEST_CASE("running example q=3, D = x^3 + 2x + 1") {
    FieldSpec F(3);
    Poly D = running_D(F);
    REQUIRE(is_squarefree(F, D));

    auto L = l_coefficients(F, D, true); // full summation + symmetry check
    REQUIRE(L.g == 1);
    REQUIRE(L.coeffs == std::vector<BigInt>{1, 3, 3});

    auto psi = psi_power_sums(F, D, 2);
    REQUIRE(psi == std::vector<long long>{3, -3});

    auto zs = compute_zeros(F, L);
    REQUIRE(zs.angles.size() == 2);
    REQUIRE(std::abs(zs.angles[0] - 5.0 / 12.0) < 1e-12);
    REQUIRE(std::abs(zs.angles[1] - 7.0 / 12.0) < 1e-12);
    for (double r : zs.residuals) REQUIRE(r < 1e-12);

    auto cv = central_value(F, L);
    REQUIRE(cv.A == Rational(2));
    REQUIRE(cv.B == Rational(1)); // L(1/2) = 2 + sqrt(3)
    REQUIRE_FALSE(cv.vanishing);
    double numeric = l_eval(L, 1.0 / std::sqrt(3.0));
    REQUIRE(std::abs(numeric - (2.0 + std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("newton recurrence and character sums agree exhaustively") {
    for (const char* spec : {"3", "5"}) {
        FieldSpec F = FieldSpec::parse(spec);
        for (int g = 1; g <= 2; ++g) {
            for_each_hyperelliptic(F, 2 * g + 1, [&](const Poly& D) {
                auto direct = l_coefficients(F, D);
                auto viaPsi = l_from_psi(F, D, psi_power_sums(F, D, g));
                REQUIRE(direct.coeffs == viaPsi.coeffs);
                // and psi recovered from coefficients closes the loop
                auto back = psi_from_coeffs(direct, g);
                auto fwd = psi_power_sums(F, D, g);
                for (int n = 1; n <= g; ++n)
                    REQUIRE(back[static_cast<std::size_t>(n - 1)] ==
                            BigInt(fwd[static_cast<std::size_t>(n - 1)]));
            });
        }
    }
}

TEST_CASE("functional equation symmetry holds under full summation") {
    FieldSpec F(3);
    for (int g = 1; g <= 2; ++g)
        for_each_hyperelliptic(F, 2 * g + 1, [&](const Poly& D) {
            REQUIRE_NOTHROW(l_coefficients(F, D, true)); // throws on any violation
        });
}

TEST_CASE("riemann hypothesis: all zeros on |u| = q^{-1/2}") {
    for (const char* spec : {"3", "5"}) {
        FieldSpec F = FieldSpec::parse(spec);
        for_each_hyperelliptic(F, 5, [&](const Poly& D) {
            auto zs = compute_zeros(F, l_coefficients(F, D));
            REQUIRE(zs.angles.size() == 4);
            for (double r : zs.residuals) REQUIRE(r < 1e-8);
        });
    }
}

TEST_CASE("zero angles come in conjugate pairs") {
    FieldSpec F(3);
    for_each_hyperelliptic(F, 5, [&](const Poly& D) {
        auto zs = compute_zeros(F, l_coefficients(F, D));
        // real coefficients: the multiset of angles is symmetric under theta -> 1 - theta
        for (std::size_t j = 0; j < zs.angles.size(); ++j) {
            double mirrored = 1.0 - zs.angles[zs.angles.size() - 1 - j];
            if (mirrored >= 1.0) mirrored -= 1.0;
            REQUIRE(std::abs(zs.angles[j] - mirrored) < 1e-8);
        }
    });
}

TEST_CASE("central value matches the numeric evaluation") {
    FieldSpec F(3);
    double sq = std::sqrt(3.0);
    for (int d : {5, 7}) {
        for_each_hyperelliptic(F, d, [&](const Poly& D) {
            auto L = l_coefficients(F, D);
            auto cv = central_value(F, L);
            double exactval = static_cast<double>(cv.A) + static_cast<double>(cv.B) * sq;
            REQUIRE(std::abs(l_eval(L, 1.0 / sq) - exactval) < 1e-8);
            REQUIRE(cv.vanishing == (std::abs(exactval) < 1e-9));
        });
    }
}

TEST_CASE("multiplicity profile is exact and even at the real point") {
    FieldSpec F(3);
    for (int d : {5, 7}) {
        for_each_hyperelliptic(F, d, [&](const Poly& D) {
            auto L = l_coefficients(F, D);
            auto prof = multiplicity_profile(L);
            long long sum = 0;
            for (int m : prof) sum += m;
            REQUIRE(sum == 2 * L.g);
            // vanishing at the central point u = q^{-1/2}: the pair of
            // conjugate zeros at theta = 0 forces even order. Verify the
            // order of vanishing at u0 is even via the exact central value:
            auto cv = central_value(F, L);
            if (cv.vanishing) {
                // count the order numerically with the exact square-free data:
                // a simple real zero at theta = 0 or 1/2 would contradict the
                // symmetry c_n <-> q^{g-n} c_n only through the factor u^2 - 1/q
                // or (u sqrt q + 1)^2 / q; assert the count of zeros with
                // theta ~ 0 is even.
                auto zs = compute_zeros(F, L);
                int at0 = 0;
                for (double t : zs.angles)
                    if (std::abs(t) < 1e-6 || std::abs(t - 1.0) < 1e-6) ++at0;
                REQUIRE(at0 % 2 == 0);
            }
        });
    }
}

TEST_CASE("simple zero count agrees with the numeric zero set") {
    FieldSpec F(3);
    for_each_hyperelliptic(F, 5, [&](const Poly& D) {
        auto L = l_coefficients(F, D);
        long long simple = simple_zero_count(L);
        auto prof = multiplicity_profile(L);
        long long expect = 0;
        for (int m : prof)
            if (m == 1) ++expect;
        REQUIRE(simple == expect);
    });
}

TEST_CASE("approximate functional equation is exact for polynomial L") {
    FieldSpec F(3);
    Poly D = running_D(F);
    auto L = l_coefficients(F, D);
    for (double a : {-0.2, -0.1, 0.0, 0.1, 0.24}) {
        auto v = afe_evaluate(F, L, a);
        REQUIRE(std::abs(v.lhs - v.rhs) < 1e-12 * (1.0 + std::abs(v.lhs)));
    }
    REQUIRE_THROWS_AS(afe_evaluate(F, L, 0.3), std::domain_error);
}

TEST_CASE("require_hyperelliptic rejects bad discriminants") {
    FieldSpec F(3);
    REQUIRE_THROWS_AS(require_hyperelliptic(F, Poly::from(F, {0, 0, 1})), std::domain_error); // even degree
    REQUIRE_THROWS_AS(require_hyperelliptic(F, Poly::from(F, {0, 0, 0, 2})), std::domain_error); // non-monic
    Poly x = Poly::x();
    Poly x3 = poly_mul(F, poly_mul(F, x, x), x);
    REQUIRE_THROWS_AS(require_hyperelliptic(F, x3), std::domain_error); // not square-free
    REQUIRE_NOTHROW(require_hyperelliptic(F, running_D(F)));
}

TEST_CASE("genus zero: L = 1 identically") {
    FieldSpec F(3);
    for_each_hyperelliptic(F, 1, [&](const Poly& D) {
        auto L = l_coefficients(F, D);
        REQUIRE(L.g == 0);
        REQUIRE(L.coeffs == std::vector<BigInt>{1});
        REQUIRE(compute_zeros(F, L).angles.empty());
    });
}
