#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <fredholm/rational.hpp>

using fredholm::BigInt;
using fredholm::Rational;

TEST_CASE("construction normalizes to reduced form", "[rational]") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(10, 9).num() == 10);
    CHECK(Rational(10, 9).den() == 9);
}

TEST_CASE("division by zero is an error", "[rational]") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), fredholm::DomainError);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), fredholm::DomainError);
}

TEST_CASE("arithmetic is exact", "[rational]") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(10, 9) * Rational(9, 10) == Rational(1));
    CHECK(Rational(260, 119) - Rational(80, 119) == Rational(180, 119));
    CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
    CHECK(-Rational(5, 7) == Rational(-5, 7));
}

TEST_CASE("ordering compares by value", "[rational]") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(7, 5) > Rational(4, 3));
    CHECK(Rational(2, 4) <= Rational(1, 2));
}

TEST_CASE("round trip (r + s) - s = r on random reduced rationals", "[rational]") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 30);
    for (int i = 0; i < 300; ++i) {
        const Rational r(num(rng), den(rng));
        const Rational s(num(rng), den(rng));
        CHECK((r + s) - s == r);
        if (!s.is_zero()) CHECK((r * s) / s == r);
    }
}

TEST_CASE("to_double and printing", "[rational]") {
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK(Rational(10, 9).to_double() == Catch::Approx(1.1111111111111112).epsilon(1e-15));
    CHECK(Rational(10, 9).to_string() == "10/9");
    CHECK(Rational(-3).to_string() == "-3");
    CHECK(Rational(0).to_string() == "0");
}

TEST_CASE("large values stay exact", "[rational]") {
    // sum of 1/k for k = 1..30 has a large reduced denominator
    Rational h(0);
    for (int k = 1; k <= 30; ++k) h += Rational(1, k);
    Rational back(0);
    for (int k = 30; k >= 1; --k) back += Rational(1, k);
    CHECK(h == back);
    CHECK(h.den() > BigInt(1000000));
}

TEST_CASE("binomial coefficients", "[rational]") {
    CHECK(fredholm::binomial(0, 0) == 1);
    CHECK(fredholm::binomial(10, 5) == 252);
    CHECK(fredholm::binomial(10, 0) == 1);
    CHECK(fredholm::binomial(10, 10) == 1);
    CHECK(fredholm::binomial(5, 7) == 0);
    CHECK(fredholm::binomial(64, 32) == BigInt("1832624140942590534"));
    for (int n = 1; n <= 20; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(fredholm::binomial(n, k) == fredholm::binomial(n - 1, k - 1) + fredholm::binomial(n - 1, k));
}
