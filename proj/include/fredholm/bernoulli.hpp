#pragma once

#include <string>
#include <vector>

#include "fredholm/errors.hpp"
#include "fredholm/polynomial.hpp"
#include "fredholm/rational.hpp"

namespace fredholm {

// b_0 .. b_kmax, exact.
struct BernoulliNumbers {
    std::vector<Rational> values;
};

// Classic recurrence: sum_{j=0}^{k} C(k+1, j) b_j = 0, b_0 = 1. Equivalent
// to defining b_k as the negated unit-interval integral of the k-th basis
// polynomial; the test suite checks that identity exactly.
inline BernoulliNumbers bernoulli_numbers(int kmax) {
    if (kmax < 0) throw ArgumentError("argument error: bernoulli_numbers requires kmax >= 0");
    BernoulliNumbers b;
    b.values.reserve(static_cast<std::size_t>(kmax) + 1);
    b.values.emplace_back(1);
    for (int k = 1; k <= kmax; ++k) {
        Rational s(0);
        for (int j = 0; j < k; ++j) s += Rational(binomial(k + 1, j)) * b.values[j];
        b.values.push_back(-s / Rational(binomial(k + 1, k)));
    }
    return b;
}

namespace detail {

// (x + k)^m as an exact polynomial in x.
inline Polynomial<Rational> shifted_power(int k, int m) {
    std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
    Rational kp(1);  // k^(m-j), built from the top degree down
    for (int j = m; j >= 0; --j) {
        c[static_cast<std::size_t>(j)] = Rational(binomial(m, j)) * kp;
        kp *= Rational(k);
    }
    return Polynomial<Rational>(std::move(c));
}

}  // namespace detail

// Explicit double-sum construction: the alternating binomial sums of
// (x + k)^m, with the same expression at x = 0 subtracted so the result
// vanishes at the origin. This is the canonical route; the implicit route
// below exists to cross-check it.
inline Polynomial<Rational> bernoulli_basis_explicit(int m) {
    if (m < 0) throw ArgumentError("argument error: basis degree must be >= 0");
    if (m == 0) return Polynomial<Rational>::constant(Rational(1));
    Polynomial<Rational> acc;
    for (int n = 0; n <= m; ++n) {
        Polynomial<Rational> inner;
        for (int k = 0; k <= n; ++k) {
            const Rational sign((k % 2 == 0) ? 1 : -1);
            inner = inner + (sign * Rational(binomial(n, k))) * detail::shifted_power(k, m);
        }
        acc = acc + Rational(1, n + 1) * inner;
    }
    // subtract the x = 0 value (the second double sum collapses to it)
    return acc - Polynomial<Rational>::constant(acc.eval(Rational(0)));
}

// Binomial convolution of the Bernoulli numbers, shifted by its constant
// term b_m so both construction routes agree (see build_basis).
inline Polynomial<Rational> bernoulli_basis_implicit(int m, const BernoulliNumbers& b) {
    if (m < 0) throw ArgumentError("argument error: basis degree must be >= 0");
    if (static_cast<int>(b.values.size()) <= m)
        throw ArgumentError("argument error: bernoulli numbers cover fewer indices than requested");
    if (m == 0) return Polynomial<Rational>::constant(Rational(1));
    std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k)
        c[static_cast<std::size_t>(m - k)] = Rational(binomial(m, k)) * b.values[static_cast<std::size_t>(k)];
    c[0] -= b.values[static_cast<std::size_t>(m)];
    return Polynomial<Rational>(std::move(c));
}

// The polynomial basis {B_0, ..., B_n}: B_0 = 1, each B_i monic of degree i,
// vanishing at 0 for i >= 1 and at 1 for i >= 2. Built once in exact
// rationals; float copies are precomputed for the quadrature paths.
class BernoulliBasis {
public:
    explicit BernoulliBasis(int degree) : degree_(degree) {
        if (degree < 0) throw ArgumentError("argument error: basis degree must be >= 0");
        const BernoulliNumbers numbers = bernoulli_numbers(degree);
        polys_.reserve(static_cast<std::size_t>(degree) + 1);
        float_polys_.reserve(static_cast<std::size_t>(degree) + 1);
        for (int i = 0; i <= degree; ++i) {
            Polynomial<Rational> p = bernoulli_basis_explicit(i);
            if (!(p == bernoulli_basis_implicit(i, numbers)))
                throw InternalError("internal consistency error: basis construction routes disagree at degree " +
                                    std::to_string(i));
            float_polys_.push_back(to_float(p));
            polys_.push_back(std::move(p));
        }
    }

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }
    const Polynomial<Rational>& poly(int i) const { return polys_.at(static_cast<std::size_t>(i)); }
    const Polynomial<double>& poly_f(int i) const { return float_polys_.at(static_cast<std::size_t>(i)); }

private:
    int degree_;
    std::vector<Polynomial<Rational>> polys_;
    std::vector<Polynomial<double>> float_polys_;
};

inline BernoulliBasis build_basis(int degree) { return BernoulliBasis(degree); }

}  // namespace fredholm
