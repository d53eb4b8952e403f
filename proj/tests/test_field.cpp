#include "hyperell/field.hpp"

#include <catch_amalgamated.hpp>

using namespace hyperell;

TEST_CASE("prime field arithmetic F_3") {
    FieldSpec F(3);
    REQUIRE(F.q() == 3);
    REQUIRE(F.p() == 3);
    REQUIRE(F.k() == 1);
    REQUIRE(F.add(1, 2) == 0);
    REQUIRE(F.mul(2, 2) == 1);
    REQUIRE(F.inv(2) == 2); // 2 * 2 = 4 = 1 mod 3
    REQUIRE(F.neg(1) == 2);
    REQUIRE(F.quad_char(0) == 0);
    REQUIRE(F.quad_char(1) == 1);
    REQUIRE(F.quad_char(2) == -1); // 2 is not a square mod 3
}

TEST_CASE("extension field F_9 = F_3[t]/(t^2+1)") {
    FieldSpec F = FieldSpec::parse("9");
    REQUIRE(F.q() == 9);
    REQUIRE(F.p() == 3);
    REQUIRE(F.k() == 2);
    // t has code 3 (coordinates (0,1)); t^2 = -1 = 2.
    FqElem t = 3;
    REQUIRE(F.mul(t, t) == 2);
    REQUIRE(F.trace(t) == 0); // Tr(t) = t + t^3 = t - t = 0
    REQUIRE(F.trace(1) == 2); // Tr(1) = 1 + 1 = 2
    // quad_char is trivial on the prime subfield of F_{p^2}: every element
    // of F_3^* is a square in F_9.
    REQUIRE(F.quad_char(2) == 1);
    // t^2 = 2, so t witnesses that 2 is a square; -1 has a square root.
    int squares = 0;
    for (FqElem a = 1; a < 9; ++a)
        if (F.quad_char(a) == 1) ++squares;
    REQUIRE(squares == 4); // (q-1)/2
}

TEST_CASE("field inverses and exponentiation are consistent") {
    for (const char* spec : {"3", "5", "7", "9", "25", "27"}) {
        FieldSpec F = FieldSpec::parse(spec);
        for (std::uint32_t a = 1; a < F.q(); ++a) {
            auto e = static_cast<FqElem>(a);
            REQUIRE(F.mul(e, F.inv(e)) == 1);
            REQUIRE(F.pow(e, static_cast<long long>(F.q()) - 1) == 1);
        }
    }
}

TEST_CASE("trace maps onto the prime subfield surjectively") {
    FieldSpec F = FieldSpec::parse("27");
    std::vector<int> hit(3, 0);
    for (std::uint32_t a = 0; a < F.q(); ++a) ++hit[F.trace(static_cast<FqElem>(a))];
    // Tr is F_p-linear and surjective: each fiber has q/p elements.
    REQUIRE(hit[0] == 9);
    REQUIRE(hit[1] == 9);
    REQUIRE(hit[2] == 9);
}

TEST_CASE("invalid field specs are rejected") {
    REQUIRE_THROWS_AS(FieldSpec(2), std::domain_error);  // even characteristic
    REQUIRE_THROWS_AS(FieldSpec(4), std::domain_error);  // composite
    REQUIRE_THROWS_AS(FieldSpec(15), std::domain_error); // composite odd
    REQUIRE_THROWS_AS(FieldSpec::parse("4"), std::domain_error);
    REQUIRE_THROWS_AS(FieldSpec::parse(""), std::domain_error);
    REQUIRE_THROWS_AS(FieldSpec::parse("abc"), std::domain_error);
    REQUIRE_THROWS_AS(FieldSpec::parse("3^2"), std::domain_error); // missing modulus
    // reducible modulus t^2 - 1 = (t-1)(t+1)
    REQUIRE_THROWS_AS(FieldSpec(3, {2, 0, 1}), std::domain_error);
    // wrong coefficient count
    REQUIRE_THROWS_AS(FieldSpec::parse("3^2:1,1"), std::domain_error);
    // non-monic
    REQUIRE_THROWS_AS(FieldSpec(3, {1, 0, 2}), std::domain_error);
    REQUIRE_THROWS_AS(FieldSpec(3, {7, 0, 1}), std::domain_error); // coeff >= p
}

TEST_CASE("parse round-trips through to_string") {
    for (const char* spec : {"3", "5", "9", "25", "27", "3^2:1,0,1", "5^2:2,0,1"}) {
        FieldSpec F = FieldSpec::parse(spec);
        FieldSpec G = FieldSpec::parse(F.to_string());
        REQUIRE(F == G);
    }
    // shorthand and explicit forms agree
    REQUIRE(FieldSpec::parse("9") == FieldSpec::parse("3^2:1,0,1"));
    REQUIRE(FieldSpec::parse("25") == FieldSpec::parse("5^2:2,0,1"));
    REQUIRE(FieldSpec::parse("27") == FieldSpec::parse("3^3:1,2,0,1"));
}

TEST_CASE("degree-1 modulus normalizes to the prime field") {
    FieldSpec F(3, {1, 1}); // F_3[t]/(t+1) = F_3
    REQUIRE(F.q() == 3);
    REQUIRE(F.to_string() == "3");
}
