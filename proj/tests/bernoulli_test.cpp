#include <catch2/catch_amalgamated.hpp>

#include <fredholm/bernoulli.hpp>

using fredholm::bernoulli_basis_explicit;
using fredholm::bernoulli_basis_implicit;
using fredholm::bernoulli_numbers;
using fredholm::BernoulliBasis;
using fredholm::Polynomial;
using fredholm::Rational;
using PolyQ = Polynomial<Rational>;

TEST_CASE("first Bernoulli numbers", "[bernoulli]") {
    const auto b = bernoulli_numbers(6);
    CHECK(b.values[0] == Rational(1));
    CHECK(b.values[1] == Rational(-1, 2));
    CHECK(b.values[2] == Rational(1, 6));
    CHECK(b.values[3] == Rational(0));
    CHECK(b.values[4] == Rational(-1, 30));
    CHECK(b.values[5] == Rational(0));
    CHECK(b.values[6] == Rational(1, 42));
    CHECK(bernoulli_numbers(0).values == std::vector<Rational>{Rational(1)});
}

TEST_CASE("odd Bernoulli numbers vanish from index 3", "[bernoulli]") {
    const auto b = bernoulli_numbers(15);
    for (int k = 3; k <= 15; k += 2) CHECK(b.values[static_cast<std::size_t>(k)] == Rational(0));
}

TEST_CASE("explicit construction matches the known low-degree polynomials", "[bernoulli]") {
    CHECK(bernoulli_basis_explicit(0) == PolyQ::constant(Rational(1)));
    CHECK(bernoulli_basis_explicit(1) == PolyQ({Rational(0), Rational(1)}));
    CHECK(bernoulli_basis_explicit(2) == PolyQ({Rational(0), Rational(-1), Rational(1)}));
    CHECK(bernoulli_basis_explicit(3) == PolyQ({Rational(0), Rational(1, 2), Rational(-3, 2), Rational(1)}));
    CHECK(bernoulli_basis_explicit(4) ==
          PolyQ({Rational(0), Rational(0), Rational(1), Rational(-2), Rational(1)}));
    CHECK(bernoulli_basis_explicit(5) ==
          PolyQ({Rational(0), Rational(-1, 6), Rational(0), Rational(5, 3), Rational(-5, 2), Rational(1)}));
}

TEST_CASE("implicit construction matches the same polynomials", "[bernoulli]") {
    const auto b = bernoulli_numbers(5);
    CHECK(bernoulli_basis_implicit(1, b) == PolyQ({Rational(0), Rational(1)}));
    CHECK(bernoulli_basis_implicit(3, b) ==
          PolyQ({Rational(0), Rational(1, 2), Rational(-3, 2), Rational(1)}));
    CHECK(bernoulli_basis_implicit(4, b) ==
          PolyQ({Rational(0), Rational(0), Rational(1), Rational(-2), Rational(1)}));
}

TEST_CASE("both construction routes agree exactly through degree 10", "[bernoulli]") {
    const auto b = bernoulli_numbers(10);
    for (int m = 0; m <= 10; ++m) CHECK(bernoulli_basis_explicit(m) == bernoulli_basis_implicit(m, b));
}

TEST_CASE("numbers are the negated unit-interval integrals of the basis", "[bernoulli]") {
    const auto b = bernoulli_numbers(10);
    for (int k = 1; k <= 10; ++k)
        CHECK(b.values[static_cast<std::size_t>(k)] ==
              -bernoulli_basis_explicit(k).integrate(Rational(0), Rational(1)));
}

TEST_CASE("endpoint and leading-coefficient structure", "[bernoulli]") {
    for (int m = 1; m <= 10; ++m) {
        const PolyQ p = bernoulli_basis_explicit(m);
        CHECK(p.degree() == m);
        CHECK(p.eval(Rational(0)) == Rational(0));
        CHECK(p.coeff(m) == Rational(1));  // monic
        if (m >= 2) CHECK(p.eval(Rational(1)) == Rational(0));
    }
}

TEST_CASE("basis build cross-checks and exposes both forms", "[bernoulli]") {
    const BernoulliBasis basis(5);
    CHECK(basis.degree() == 5);
    CHECK(basis.size() == 6);
    CHECK(basis.poly(0) == PolyQ::constant(Rational(1)));
    CHECK(basis.poly(3) == PolyQ({Rational(0), Rational(1, 2), Rational(-3, 2), Rational(1)}));
    CHECK(basis.poly_f(2).eval(1.0) == 0.0);
    CHECK(fredholm::build_basis(0).size() == 1);
    CHECK_THROWS_AS(BernoulliBasis(-1), fredholm::ArgumentError);
}

TEST_CASE("change of basis to monomials is triangular with unit diagonal", "[bernoulli]") {
    for (int n = 0; n <= 8; ++n) {
        const BernoulliBasis basis(n);
        for (int i = 0; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) CHECK(basis.poly(i).coeff(j) == Rational(0));
            CHECK(!(basis.poly(i).coeff(i) == Rational(0)));
        }
    }
}
