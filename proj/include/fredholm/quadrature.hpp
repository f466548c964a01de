#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "fredholm/errors.hpp"

namespace fredholm {

inline constexpr int kDefaultQuadOrder = 24;
inline constexpr int kMaxQuadOrder = 64;

// Gauss-Legendre rule on (-1, 1): q nodes, strictly increasing, symmetric
// about 0; weights sum to 2; exact for polynomials of degree <= 2q-1.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Legendre P_q and P'_q at x via the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int q, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= q; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    // P'_q(x) = q (x P_q - P_{q-1}) / (x^2 - 1)
    const double dp = q * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

inline QuadratureRule make_gauss_legendre(int q) {
    QuadratureRule rule;
    rule.order = q;
    rule.nodes.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    if (q == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int i = 0; i < q; ++i) {
        // Chebyshev-point initial guess; descending in i, so store reversed.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = legendre_with_derivative(q, x);
            dp = d;
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                converged = true;
                dp = legendre_with_derivative(q, x).second;
                break;
            }
        }
        if (!converged)
            throw InternalError("internal numerical error: Legendre root iteration stalled at order " +
                                std::to_string(q));
        rule.nodes[static_cast<std::size_t>(q - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(q - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace detail

// Cached per order; first construction is guarded so concurrent callers are safe.
inline const QuadratureRule& gauss_legendre(int q) {
    if (q < 1 || q > kMaxQuadOrder)
        throw ArgumentError("argument error: quadrature order must be in [1, " +
                            std::to_string(kMaxQuadOrder) + "], got " + std::to_string(q));
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, detail::make_gauss_legendre(q)).first;
    return it->second;
}

template <typename F>
double integrate_1d(F&& f, double a, double b, const QuadratureRule& rule) {
    if (!(a < b)) throw ArgumentError("argument error: integration interval requires a < b");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = mid + half * rule.nodes[i];
        const double v = f(x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os.precision(17);
            os << "evaluation error: non-finite integrand value at x = " << x;
            throw EvalError(os.str());
        }
        sum += rule.weights[i] * v;
    }
    return half * sum;
}

// Tensor-product rule over a rectangle; f is called as f(t, x).
template <typename F>
double integrate_2d(F&& f, std::pair<double, double> t_interval, std::pair<double, double> x_interval,
                    const QuadratureRule& rule) {
    const auto [ta, tb] = t_interval;
    const auto [xa, xb] = x_interval;
    if (!(ta < tb) || !(xa < xb))
        throw ArgumentError("argument error: integration rectangle requires non-degenerate intervals");
    const double tmid = 0.5 * (ta + tb);
    const double thalf = 0.5 * (tb - ta);
    const double xmid = 0.5 * (xa + xb);
    const double xhalf = 0.5 * (xb - xa);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = tmid + thalf * rule.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double x = xmid + xhalf * rule.nodes[j];
            const double v = f(t, x);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os.precision(17);
                os << "evaluation error: non-finite integrand value at (t, x) = (" << t << ", " << x << ")";
                throw EvalError(os.str());
            }
            row += rule.weights[j] * v;
        }
        sum += rule.weights[i] * row;
    }
    return thalf * xhalf * sum;
}

}  // namespace fredholm
