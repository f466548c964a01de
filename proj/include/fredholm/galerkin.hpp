#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fredholm/bernoulli.hpp"
#include "fredholm/errors.hpp"
#include "fredholm/expr.hpp"
#include "fredholm/polynomial.hpp"
#include "fredholm/quadrature.hpp"
#include "fredholm/rational.hpp"

namespace fredholm {

inline constexpr int kMaxBasisDegree = 64;

// A parsed numeric value. `exact` is present when the input was written as
// an integer or an integer ratio, which is what lets the exact assembly
// path keep the whole computation in rationals.
struct Scalar {
    double value = 0.0;
    std::optional<Rational> exact;

    static Scalar from_rational(Rational r) {
        Scalar s;
        s.value = r.to_double();
        s.exact = std::move(r);
        return s;
    }
    static Scalar from_double(double v) {
        Scalar s;
        s.value = v;
        return s;
    }
};

struct SeparableKernel {
    std::vector<SeparableTerm> terms;
};
struct GeneralKernel {
    ExprPtr expr;  // k(t, x)
};
using Kernel = std::variant<SeparableKernel, GeneralKernel>;

// One integral-equation instance:
//   coefficient(x) * phi(x) + lambda * Int_lower^upper kernel(t, x) phi(t) dt = source(x)
struct Problem {
    Scalar lower;
    Scalar upper;
    ExprPtr coefficient;       // expression in x
    Scalar lambda;
    Kernel kernel;
    ExprPtr source;            // expression in x
    ExprPtr exact;             // optional reference solution in x; may be null
};

inline void validate(const Problem& p) {
    if (!(p.lower.value < p.upper.value))
        throw ProblemFileError("validation error: interval requires lower < upper");
    if (!p.coefficient || !p.source) throw ProblemFileError("validation error: incomplete problem");
    if (uses_var(*p.coefficient, 't'))
        throw ProblemFileError("validation error: coefficient a may reference x only");
    if (uses_var(*p.source, 't')) throw ProblemFileError("validation error: f may reference x only");
    if (p.exact && uses_var(*p.exact, 't'))
        throw ProblemFileError("validation error: exact solution may reference x only");
    if (const auto* sep = std::get_if<SeparableKernel>(&p.kernel)) {
        for (const auto& term : sep->terms) {
            if (uses_var(*term.g, 't'))
                throw ProblemFileError("validation error: separable kernel x-factor references t");
            if (uses_var(*term.h, 'x'))
                throw ProblemFileError("validation error: separable kernel t-factor references x");
        }
    }
}

template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), T(0)) {}

    int size() const { return n_; }
    T& at(int row, int col) { return data_[static_cast<std::size_t>(row) * n_ + col]; }
    const T& at(int row, int col) const { return data_[static_cast<std::size_t>(row) * n_ + col]; }

private:
    int n_ = 0;
    std::vector<T> data_;
};

// The assembled linear system. Row index is the test-function index, column
// index the trial-function index, so `matrix * coeffs = rhs` is exactly the
// weighted-residual system and asymmetric kernels land the right way round.
template <typename T>
struct GalerkinSystem {
    int degree = 0;
    DenseMatrix<T> matrix;
    std::vector<T> rhs;
};

enum class SolveMode { exact, numeric };
enum class ModePolicy { automatic, force_numeric };

// Every piece of a problem reduced to exact rationals; available only when
// the whole instance is polynomial with exact interval and lambda.
struct ExactProblemForms {
    Rational lower;
    Rational upper;
    Rational lambda;
    Polynomial<Rational> coefficient;
    Polynomial<Rational> source;
    std::vector<std::pair<Polynomial<Rational>, Polynomial<Rational>>> kernel;  // (g in x, h in t)
};

inline std::optional<ExactProblemForms> exact_forms(const Problem& p) {
    if (!p.lower.exact || !p.upper.exact || !p.lambda.exact) return std::nullopt;
    const auto* sep = std::get_if<SeparableKernel>(&p.kernel);
    if (!sep) return std::nullopt;
    auto a_poly = detect_polynomial(*p.coefficient, 'x');
    if (!a_poly) return std::nullopt;
    auto f_poly = detect_polynomial(*p.source, 'x');
    if (!f_poly) return std::nullopt;
    ExactProblemForms forms{*p.lower.exact, *p.upper.exact, *p.lambda.exact,
                            std::move(*a_poly), std::move(*f_poly), {}};
    forms.kernel.reserve(sep->terms.size());
    for (const auto& term : sep->terms) {
        auto g = detect_polynomial(*term.g, 'x');
        if (!g) return std::nullopt;
        auto h = detect_polynomial(*term.h, 't');
        if (!h) return std::nullopt;
        forms.kernel.emplace_back(std::move(*g), std::move(*h));
    }
    return forms;
}

inline GalerkinSystem<Rational> assemble_exact(const ExactProblemForms& forms, const BernoulliBasis& basis) {
    const int n = basis.degree();
    GalerkinSystem<Rational> sys{n, DenseMatrix<Rational>(n + 1),
                                 std::vector<Rational>(static_cast<std::size_t>(n) + 1)};
    const std::size_t nterms = forms.kernel.size();
    // 1-D kernel integrals: h_p against trial functions, g_p against test functions
    std::vector<std::vector<Rational>> h_int(nterms), g_int(nterms);
    for (std::size_t t = 0; t < nterms; ++t) {
        h_int[t].reserve(static_cast<std::size_t>(n) + 1);
        g_int[t].reserve(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            h_int[t].push_back((forms.kernel[t].second * basis.poly(i)).integrate(forms.lower, forms.upper));
            g_int[t].push_back((forms.kernel[t].first * basis.poly(i)).integrate(forms.lower, forms.upper));
        }
    }
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            Rational entry =
                (forms.coefficient * basis.poly(i) * basis.poly(j)).integrate(forms.lower, forms.upper);
            for (std::size_t t = 0; t < nterms; ++t)
                entry += forms.lambda * h_int[t][static_cast<std::size_t>(i)] * g_int[t][static_cast<std::size_t>(j)];
            sys.matrix.at(j, i) = std::move(entry);
        }
    }
    for (int j = 0; j <= n; ++j)
        sys.rhs[static_cast<std::size_t>(j)] =
            (forms.source * basis.poly(j)).integrate(forms.lower, forms.upper);
    return sys;
}

inline GalerkinSystem<double> assemble_numeric(const Problem& p, const BernoulliBasis& basis,
                                               const QuadratureRule& rule) {
    const int n = basis.degree();
    const double lo = p.lower.value;
    const double hi = p.upper.value;
    GalerkinSystem<double> sys{n, DenseMatrix<double>(n + 1),
                               std::vector<double>(static_cast<std::size_t>(n) + 1)};

    // kernel double integral, factored per term for separable kernels
    DenseMatrix<double> kernel_part(n + 1);
    if (const auto* sep = std::get_if<SeparableKernel>(&p.kernel)) {
        const std::size_t nterms = sep->terms.size();
        std::vector<std::vector<double>> h_int(nterms), g_int(nterms);
        for (std::size_t t = 0; t < nterms; ++t) {
            const Expr& h = *sep->terms[t].h;
            const Expr& g = *sep->terms[t].g;
            for (int i = 0; i <= n; ++i) {
                const auto& bi = basis.poly_f(i);
                h_int[t].push_back(
                    integrate_1d([&](double tv) { return eval(h, 0.0, tv) * bi.eval(tv); }, lo, hi, rule));
                g_int[t].push_back(
                    integrate_1d([&](double xv) { return eval(g, xv) * bi.eval(xv); }, lo, hi, rule));
            }
        }
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                double d = 0.0;
                for (std::size_t t = 0; t < nterms; ++t)
                    d += h_int[t][static_cast<std::size_t>(i)] * g_int[t][static_cast<std::size_t>(j)];
                kernel_part.at(j, i) = d;
            }
    } else {
        const ExprPtr& kernel_expr = std::get<GeneralKernel>(p.kernel).expr;
        if (!kernel_expr) throw ProblemFileError("validation error: kernel expression missing");
        const Expr& k = *kernel_expr;
        for (int i = 0; i <= n; ++i) {
            const auto& bi = basis.poly_f(i);
            for (int j = 0; j <= n; ++j) {
                const auto& bj = basis.poly_f(j);
                kernel_part.at(j, i) = integrate_2d(
                    [&](double tv, double xv) { return eval(k, xv, tv) * bi.eval(tv) * bj.eval(xv); },
                    {lo, hi}, {lo, hi}, rule);
            }
        }
    }

    const Expr& coeff_fn = *p.coefficient;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            // pre-multiplied trial*test polynomial: one a(x) evaluation per node
            const Polynomial<double> prod = basis.poly_f(i) * basis.poly_f(j);
            const double gram =
                integrate_1d([&](double xv) { return eval(coeff_fn, xv) * prod.eval(xv); }, lo, hi, rule);
            sys.matrix.at(j, i) = gram + p.lambda.value * kernel_part.at(j, i);
        }
    }
    const Expr& source_fn = *p.source;
    for (int j = 0; j <= n; ++j) {
        const auto& bj = basis.poly_f(j);
        sys.rhs[static_cast<std::size_t>(j)] =
            integrate_1d([&](double xv) { return eval(source_fn, xv) * bj.eval(xv); }, lo, hi, rule);
    }
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i)
            if (!std::isfinite(sys.matrix.at(j, i)))
                throw EvalError("evaluation error: non-finite system entry");
        if (!std::isfinite(sys.rhs[static_cast<std::size_t>(j)]))
            throw EvalError("evaluation error: non-finite load entry");
    }
    return sys;
}

using AssembledSystem = std::variant<GalerkinSystem<Rational>, GalerkinSystem<double>>;

// Exact mode is chosen automatically whenever every ingredient folds to
// rationals; anything else falls back to quadrature silently.
inline AssembledSystem assemble(const Problem& p, const BernoulliBasis& basis, const QuadratureRule& rule,
                                ModePolicy policy = ModePolicy::automatic) {
    validate(p);
    if (policy == ModePolicy::automatic) {
        if (auto forms = exact_forms(p)) return assemble_exact(*forms, basis);
    }
    return assemble_numeric(p, basis, rule);
}

namespace detail {

inline double pivot_magnitude(const Rational& r) { return std::abs(r.to_double()); }
inline double pivot_magnitude(double v) { return std::abs(v); }

}  // namespace detail

// Gaussian elimination with partial pivoting. In rational mode any nonzero
// pivot is exact and the result is exact; in float mode a pivot smaller
// than 1e-12 times the matrix max-row-norm is declared singular.
template <typename T>
std::vector<T> lu_solve(const GalerkinSystem<T>& sys) {
    const int m = sys.degree + 1;
    DenseMatrix<T> a = sys.matrix;
    std::vector<T> b = sys.rhs;

    double threshold = 0.0;
    if constexpr (std::is_same_v<T, double>) {
        double max_row_norm = 0.0;
        for (int r = 0; r < m; ++r) {
            double norm = 0.0;
            for (int c = 0; c < m; ++c) norm += std::abs(a.at(r, c));
            max_row_norm = std::max(max_row_norm, norm);
        }
        threshold = 1e-12 * max_row_norm;
    }

    double max_pivot = 0.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int col = 0; col < m; ++col) {
        int pivot_row = -1;
        if constexpr (std::is_same_v<T, double>) {
            double best = 0.0;
            for (int r = col; r < m; ++r) {
                if (std::abs(a.at(r, col)) > best) {
                    best = std::abs(a.at(r, col));
                    pivot_row = r;
                }
            }
            if (best < threshold) pivot_row = -1;
        } else {
            for (int r = col; r < m; ++r) {
                if (!(a.at(r, col) == T(0))) {
                    pivot_row = r;
                    break;
                }
            }
        }
        if (pivot_row < 0) {
            const double cond =
                min_pivot > 0.0 && std::isfinite(min_pivot) ? max_pivot / min_pivot
                                                            : std::numeric_limits<double>::infinity();
            std::ostringstream os;
            os << "singular system: no usable pivot in column " << col << " (condition estimate ";
            if (std::isfinite(cond))
                os << cond;
            else
                os << "inf";
            os << ")";
            throw SingularSystemError(os.str(), col, cond);
        }
        if (pivot_row != col) {
            for (int c = 0; c < m; ++c) std::swap(a.at(col, c), a.at(pivot_row, c));
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot_row)]);
        }
        const double mag = detail::pivot_magnitude(a.at(col, col));
        max_pivot = std::max(max_pivot, mag);
        min_pivot = std::min(min_pivot, mag);
        for (int r = col + 1; r < m; ++r) {
            if (a.at(r, col) == T(0)) continue;
            const T factor = a.at(r, col) / a.at(col, col);
            a.at(r, col) = T(0);
            for (int c = col + 1; c < m; ++c) a.at(r, c) -= factor * a.at(col, c);
            b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(col)];
        }
    }

    std::vector<T> x(static_cast<std::size_t>(m), T(0));
    for (int r = m - 1; r >= 0; --r) {
        T acc = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < m; ++c) acc -= a.at(r, c) * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = acc / a.at(r, r);
    }
    return x;
}

// Basis coefficients plus the collapsed monomial form of the approximation.
struct Solution {
    SolveMode mode;
    std::vector<double> coeffs;
    std::optional<std::vector<Rational>> coeffs_exact;
    BernoulliBasis basis;
    Polynomial<double> monomial;
    std::optional<Polynomial<Rational>> monomial_exact;
};

inline Solution solve(const Problem& p, int degree, const QuadratureRule& rule,
                      ModePolicy policy = ModePolicy::automatic) {
    if (degree < 0 || degree > kMaxBasisDegree)
        throw ArgumentError("argument error: basis degree must be in [0, " +
                            std::to_string(kMaxBasisDegree) + "], got " + std::to_string(degree));
    BernoulliBasis basis(degree);
    AssembledSystem sys = assemble(p, basis, rule, policy);

    if (auto* exact_sys = std::get_if<GalerkinSystem<Rational>>(&sys)) {
        std::vector<Rational> coeffs = lu_solve(*exact_sys);
        Polynomial<Rational> mono;
        std::vector<double> coeffs_f;
        coeffs_f.reserve(coeffs.size());
        for (int i = 0; i <= degree; ++i) {
            mono = mono + coeffs[static_cast<std::size_t>(i)] * basis.poly(i);
            coeffs_f.push_back(coeffs[static_cast<std::size_t>(i)].to_double());
        }
        return Solution{SolveMode::exact,    std::move(coeffs_f), std::move(coeffs),
                        std::move(basis),    to_float(mono),      std::move(mono)};
    }
    std::vector<double> coeffs = lu_solve(std::get<GalerkinSystem<double>>(sys));
    Polynomial<double> mono;
    for (int i = 0; i <= degree; ++i) mono = mono + coeffs[static_cast<std::size_t>(i)] * basis.poly_f(i);
    return Solution{SolveMode::numeric, std::move(coeffs), std::nullopt,
                    std::move(basis),   std::move(mono),   std::nullopt};
}

// Largest pointwise defect of the equation itself, with the inner integral
// done by quadrature regardless of how the solution was produced.
inline double residual(const Solution& s, const Problem& p, std::span<const double> points,
                       const QuadratureRule& rule) {
    const double lo = p.lower.value;
    const double hi = p.upper.value;
    for (double x : points)
        if (x < lo || x > hi)
            throw ArgumentError("argument error: residual point outside the problem interval");

    const Polynomial<double>& phi = s.monomial;
    std::vector<double> t_integrals;
    const auto* sep = std::get_if<SeparableKernel>(&p.kernel);
    if (sep) {
        t_integrals.reserve(sep->terms.size());
        for (const auto& term : sep->terms)
            t_integrals.push_back(integrate_1d(
                [&](double tv) { return eval(*term.h, 0.0, tv) * phi.eval(tv); }, lo, hi, rule));
    }

    double worst = 0.0;
    for (double x : points) {
        double kernel_term = 0.0;
        if (sep) {
            for (std::size_t t = 0; t < sep->terms.size(); ++t)
                kernel_term += eval(*sep->terms[t].g, x) * t_integrals[t];
        } else {
            const Expr& k = *std::get<GeneralKernel>(p.kernel).expr;
            kernel_term =
                integrate_1d([&](double tv) { return eval(k, x, tv) * phi.eval(tv); }, lo, hi, rule);
        }
        const double defect =
            eval(*p.coefficient, x) * phi.eval(x) + p.lambda.value * kernel_term - eval(*p.source, x);
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

}  // namespace fredholm
