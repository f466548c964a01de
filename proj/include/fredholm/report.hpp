#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fredholm/errors.hpp"
#include "fredholm/expr.hpp"
#include "fredholm/galerkin.hpp"

namespace fredholm {

enum class ErrorKind { relative, absolute };

struct ErrorRow {
    double x;
    double exact;
    double approx;
    double error;
    ErrorKind kind;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;  // sorted by x ascending
    int degree = 0;
    SolveMode mode = SolveMode::numeric;
};

// |exact - approx| / |exact|, falling back to the plain absolute difference
// when the reference value is within eps of zero.
inline std::pair<double, ErrorKind> error_metric(double exact, double approx, double eps = 1e-12) {
    const double diff = std::abs(exact - approx);
    if (std::abs(exact) >= eps) return {diff / std::abs(exact), ErrorKind::relative};
    return {diff, ErrorKind::absolute};
}

inline ErrorReport evaluate_table(const Solution& s, const Expr& exact, std::span<const double> points) {
    std::vector<double> xs(points.begin(), points.end());
    std::sort(xs.begin(), xs.end());
    ErrorReport report;
    report.degree = s.basis.degree();
    report.mode = s.mode;
    report.rows.reserve(xs.size());
    for (double x : xs) {
        double reference = 0.0;
        try {
            reference = eval(exact, x);
        } catch (const EvalError& e) {
            std::ostringstream os;
            os.precision(17);
            os << e.what() << " while evaluating the exact solution at x = " << x;
            throw EvalError(os.str());
        }
        const double approx = s.monomial.eval(x);
        const auto [err, kind] = error_metric(reference, approx);
        report.rows.push_back(ErrorRow{x, reference, approx, err, kind});
    }
    return report;
}

// The default evaluation grid: 11 uniform points including both endpoints.
inline std::vector<double> uniform_grid(double a, double b, int count = 11) {
    if (count < 2) throw ArgumentError("argument error: grid needs at least 2 points");
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs.push_back(a + (b - a) * i / (count - 1));
    return xs;
}

// (degree, max pointwise error) for each requested degree, in input order.
inline std::vector<std::pair<int, double>> convergence_sweep(const Problem& p, std::span<const int> degrees,
                                                             std::span<const double> points,
                                                             const QuadratureRule& rule,
                                                             ModePolicy policy = ModePolicy::automatic) {
    if (!p.exact)
        throw ArgumentError("argument error: convergence sweep requires a problem with an exact solution");
    if (degrees.empty()) throw ArgumentError("argument error: convergence sweep requires at least one degree");
    std::vector<std::pair<int, double>> out;
    out.reserve(degrees.size());
    for (int n : degrees) {
        const Solution s = solve(p, n, rule, policy);
        const ErrorReport report = evaluate_table(s, *p.exact, points);
        double worst = 0.0;
        for (const auto& row : report.rows) worst = std::max(worst, row.error);
        out.emplace_back(n, worst);
    }
    return out;
}

namespace detail {

inline std::string float16(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16g", v);
    return buf;
}

}  // namespace detail

inline void write_csv(const ErrorReport& report, std::ostream& os) {
    os << "x,exact,approx,error,error_kind\n";
    for (const auto& row : report.rows) {
        os << detail::float16(row.x) << ',' << detail::float16(row.exact) << ','
           << detail::float16(row.approx) << ',' << detail::float16(row.error) << ','
           << (row.kind == ErrorKind::relative ? "relative" : "absolute") << '\n';
    }
}

inline void write_csv(const ErrorReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_csv(report, out);
    out.flush();
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

}  // namespace fredholm
