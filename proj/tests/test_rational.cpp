#include <catch_amalgamated.hpp>

#include "hyperchaos/rational.hpp"

using hyperchaos::Rational;
using hyperchaos::dyadic;

TEST_CASE("rationals are canonical") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(-2, -4) == Rational(1, 2));
    REQUIRE(Rational(3, -6) == Rational(-1, 2));
    REQUIRE(Rational(7, 21).str() == "1/3");
    REQUIRE(Rational(0, 5).str() == "0/1");
}

TEST_CASE("rational arithmetic is exact") {
    const Rational a(1, 3), b(2, 5);
    REQUIRE(a + b == Rational(11, 15));
    REQUIRE(a - b == Rational(-1, 15));
    REQUIRE(a * b == Rational(2, 15));
    REQUIRE(a / b == Rational(5, 6));
    REQUIRE(abs(Rational(-3, 7)) == Rational(3, 7));
    REQUIRE(min(a, b) == a);
    REQUIRE(max(a, b) == b);
    REQUIRE_THROWS_AS(a / Rational(0), std::domain_error);
    REQUIRE_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational ordering") {
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(-1, 2) < Rational(0));
    REQUIRE(Rational(1000000, 3000000) == Rational(1, 3));
}

TEST_CASE("rational parsing") {
    REQUIRE(Rational::parse("3/4") == Rational(3, 4));
    REQUIRE(Rational::parse("-3/4") == Rational(-3, 4));
    REQUIRE(Rational::parse("5") == Rational(5));
    REQUIRE(Rational::parse("6/21") == Rational(2, 7));
    REQUIRE_THROWS_AS(Rational::parse(""), std::invalid_argument);
    REQUIRE_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    REQUIRE_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("dyadic helper") {
    REQUIRE(dyadic(0) == Rational(1));
    REQUIRE(dyadic(3) == Rational(1, 8));
    REQUIRE(dyadic(20) == Rational(1, 1048576));
}
