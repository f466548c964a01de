#pragma once

#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fredholm/rational.hpp"

namespace fredholm {

// Dense univariate polynomial, coefficients in ascending degree order.
// The zero polynomial is the empty coefficient list; constructors strip
// trailing zeros so representation (and therefore equality) is unique.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

    static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
    static Polynomial monomial(T c, int degree) {
        std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
        v.back() = std::move(c);
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<T>& coeffs() const { return coeffs_; }
    T coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return T(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }

    T eval(const T& x) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // Signed definite integral over [a, b] via the antiderivative.
    T integrate(const T& a, const T& b) const {
        T sum(0);
        T pa = a;
        T pb = b;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            sum += coeffs_[i] * (pb - pa) / T(static_cast<std::int64_t>(i) + 1);
            pa = pa * a;
            pb = pb * b;
        }
        return sum;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<T> out(std::max(p.coeffs_.size(), q.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] += p.coeffs_[i];
        for (std::size_t i = 0; i < q.coeffs_.size(); ++i) out[i] += q.coeffs_[i];
        return Polynomial(std::move(out));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        if (p.is_zero() || q.is_zero()) return Polynomial();
        std::vector<T> out(p.coeffs_.size() + q.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j)
                out[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(const T& c, const Polynomial& p) {
        Polynomial r = p;
        for (auto& v : r.coeffs_) v = c * v;
        r.normalize();
        return r;
    }
    friend Polynomial operator*(const Polynomial& p, const T& c) { return c * p; }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(T(1));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    friend bool operator==(const Polynomial& p, const Polynomial& q) {
        return p.coeffs_ == q.coeffs_;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

inline Polynomial<double> to_float(const Polynomial<Rational>& p) {
    std::vector<double> c;
    c.reserve(p.coeffs().size());
    for (const auto& r : p.coeffs()) c.push_back(r.to_double());
    return Polynomial<double>(std::move(c));
}

namespace detail {

inline std::string coeff_str(const Rational& c) { return c.to_string(); }
inline std::string coeff_str(double c) {
    std::ostringstream os;
    os.precision(12);
    os << c;
    return os.str();
}
inline bool coeff_is_one(const Rational& c) { return c == Rational(1); }
inline bool coeff_is_one(double c) { return c == 1.0; }
inline bool coeff_negative(const Rational& c) { return c < Rational(0); }
inline bool coeff_negative(double c) { return c < 0.0; }

}  // namespace detail

// Ascending-degree display form, e.g. "1 - (3/2)*x^2 + x^3". The output
// re-parses under the expression grammar.
template <typename T>
std::string to_string(const Polynomial<T>& p, char var = 'x') {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        T c = p.coeff(i);
        if (c == T(0)) continue;
        const bool neg = detail::coeff_negative(c);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        T mag = neg ? T(-c) : c;
        std::string cs = detail::coeff_str(mag);
        const bool needs_wrap = cs.find('/') != std::string::npos || cs.find('e') != std::string::npos;
        if (i == 0) {
            out += cs;
        } else {
            if (!detail::coeff_is_one(mag)) {
                out += needs_wrap ? "(" + cs + ")" : cs;
                out += "*";
            }
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace fredholm
