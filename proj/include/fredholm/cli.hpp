#pragma once

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fredholm/bernoulli.hpp"
#include "fredholm/errors.hpp"
#include "fredholm/problem_io.hpp"
#include "fredholm/report.hpp"

namespace fredholm::cli {

namespace detail {

inline std::string ensure_word(std::string msg, std::string_view word, std::string_view prefix) {
    if (msg.find(word) == std::string::npos) return std::string(prefix) + msg;
    return msg;
}

inline std::vector<double> parse_points_list(const std::string& text) {
    std::vector<double> points;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = fredholm::detail::trim(std::string_view(text).substr(pos, comma - pos));
        if (item.empty()) throw ArgumentError("argument error: empty entry in --points list");
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(v))
            throw ArgumentError("argument error: invalid point '" + item + "' in --points list");
        points.push_back(v);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    if (points.empty()) throw ArgumentError("argument error: --points list is empty");
    return points;
}

inline std::vector<double> resolve_points(const Problem& p, const std::string& points_flag) {
    std::vector<double> points = points_flag.empty() ? uniform_grid(p.lower.value, p.upper.value)
                                                     : parse_points_list(points_flag);
    for (double x : points)
        if (x < p.lower.value || x > p.upper.value) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%g", x);
            throw ArgumentError("argument error: point " + std::string(buf) +
                                " lies outside the problem interval");
        }
    return points;
}

inline void check_degree(int degree) {
    if (degree < 0 || degree > kMaxBasisDegree)
        throw ArgumentError("argument error: --degree must be in [0, " + std::to_string(kMaxBasisDegree) +
                            "], got " + std::to_string(degree));
}

inline std::string coefficients_line(const Solution& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        if (i > 0) out += ", ";
        if (s.coeffs_exact) {
            out += (*s.coeffs_exact)[i].to_string();
        } else {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.10f", s.coeffs[i]);
            out += buf;
        }
    }
    return out + ")";
}

inline void print_solution(std::ostream& out, const Problem& p, const Solution& s,
                           std::span<const double> points) {
    out << "mode: " << (s.mode == SolveMode::exact ? "exact" : "numeric") << "\n";
    out << "coefficients: " << coefficients_line(s) << "\n";
    if (s.monomial_exact)
        out << "phi(x) = " << to_string(*s.monomial_exact) << "\n";
    else
        out << "phi(x) = " << to_string(s.monomial) << "\n";

    char buf[512];
    if (p.exact) {
        const ErrorReport report = evaluate_table(s, *p.exact, points);
        out << "\n              x            exact           approx              E\n";
        for (const auto& row : report.rows) {
            std::snprintf(buf, sizeof(buf), "%15.10f  %15.10f  %15.10f    %.5e\n", row.x, row.exact,
                          row.approx, row.error);
            out << buf;
        }
    } else {
        out << "\n              x           approx\n";
        std::vector<double> xs(points.begin(), points.end());
        std::sort(xs.begin(), xs.end());
        for (double x : xs) {
            std::snprintf(buf, sizeof(buf), "%15.10f  %15.10f\n", x, s.monomial.eval(x));
            out << buf;
        }
    }
}

inline void write_approx_csv(const Solution& s, std::span<const double> points,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "x,approx\n";
    std::vector<double> xs(points.begin(), points.end());
    std::sort(xs.begin(), xs.end());
    for (double x : xs)
        out << fredholm::detail::float16(x) << ',' << fredholm::detail::float16(s.monomial.eval(x)) << '\n';
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

inline void run_solve(std::ostream& out, const Problem& p, int degree, int quad_order,
                      const std::string& points_flag, const std::string& csv_path) {
    check_degree(degree);
    const QuadratureRule& rule = gauss_legendre(quad_order);
    const std::vector<double> points = resolve_points(p, points_flag);
    const Solution s = solve(p, degree, rule);
    print_solution(out, p, s, points);
    if (!csv_path.empty()) {
        if (p.exact)
            write_csv(evaluate_table(s, *p.exact, points), std::filesystem::path(csv_path));
        else
            write_approx_csv(s, points, std::filesystem::path(csv_path));
    }
}

struct DegreeRange {
    int lo = 0;
    int hi = 0;
};

inline DegreeRange parse_degree_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw ArgumentError("argument error: --degrees expects '<lo>..<hi>', got '" + text + "'");
    DegreeRange r;
    try {
        std::size_t used = 0;
        r.lo = std::stoi(text.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument("");
        const std::string hi = text.substr(dots + 2);
        r.hi = std::stoi(hi, &used);
        if (used != hi.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ArgumentError("argument error: --degrees expects '<lo>..<hi>', got '" + text + "'");
    }
    if (r.lo > r.hi) throw ArgumentError("argument error: --degrees range is empty");
    check_degree(r.lo);
    check_degree(r.hi);
    return r;
}

inline void run_convergence(std::ostream& out, const Problem& p, const DegreeRange& range, int quad_order,
                            const std::string& points_flag, const std::string& csv_path) {
    const QuadratureRule& rule = gauss_legendre(quad_order);
    const std::vector<double> points = resolve_points(p, points_flag);
    std::vector<int> degrees;
    for (int n = range.lo; n <= range.hi; ++n) degrees.push_back(n);
    const auto sweep = convergence_sweep(p, degrees, points, rule);
    out << "  n      max_error\n";
    char buf[48];
    for (const auto& [n, err] : sweep) {
        std::snprintf(buf, sizeof(buf), "%3d   %.6e\n", n, err);
        out << buf;
    }
    if (!csv_path.empty()) {
        std::ofstream file(csv_path);
        if (!file) throw IoError("cannot open '" + csv_path + "' for writing");
        file << "n,max_error\n";
        for (const auto& [n, err] : sweep) file << n << ',' << fredholm::detail::float16(err) << '\n';
        if (!file) throw IoError("write failure on '" + csv_path + "'");
    }
}

}  // namespace detail

// Exit codes: 0 success, 1 file/expression parse error, 2 singular system,
// 3 invalid arguments, 4 runtime evaluation error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Galerkin solver for linear Fredholm integral equations of the second kind"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string points_flag;
    std::string csv_path;
    std::string degrees_flag;
    int degree = 0;
    int quad_order = kDefaultQuadOrder;
    int example_id = 0;
    int max_degree = 0;

    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
    solve_cmd->add_option("--problem", problem_path, "Problem file path")->required();
    solve_cmd->add_option("--degree", degree, "Basis degree n")->required();
    solve_cmd->add_option("--quad-order", quad_order, "Gauss-Legendre order");
    solve_cmd->add_option("--points", points_flag, "Comma-separated evaluation points");
    solve_cmd->add_option("--csv", csv_path, "Write the table to this CSV file");

    CLI::App* example_cmd = app.add_subcommand("example", "Run a built-in example problem");
    example_cmd->add_option("id", example_id, "Example id (1-4)")->required();
    example_cmd->add_option("--degree", degree, "Basis degree n")->required();
    example_cmd->add_option("--quad-order", quad_order, "Gauss-Legendre order");
    example_cmd->add_option("--points", points_flag, "Comma-separated evaluation points");
    example_cmd->add_option("--csv", csv_path, "Write the table to this CSV file");

    CLI::App* basis_cmd = app.add_subcommand("basis", "Print the polynomial basis");
    basis_cmd->add_option("--max-degree", max_degree, "Highest degree to print")->required();

    CLI::App* conv_cmd = app.add_subcommand("convergence", "Max-error sweep over basis degrees");
    conv_cmd->add_option("--problem", problem_path, "Problem file path")->required();
    conv_cmd->add_option("--degrees", degrees_flag, "Degree range '<lo>..<hi>'")->required();
    conv_cmd->add_option("--quad-order", quad_order, "Gauss-Legendre order");
    conv_cmd->add_option("--points", points_flag, "Comma-separated evaluation points");
    conv_cmd->add_option("--csv", csv_path, "Write the sweep to this CSV file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (solve_cmd->parsed()) {
            detail::run_solve(out, load_problem(problem_path), degree, quad_order, points_flag, csv_path);
        } else if (example_cmd->parsed()) {
            detail::run_solve(out, builtin_example(example_id), degree, quad_order, points_flag, csv_path);
        } else if (basis_cmd->parsed()) {
            detail::check_degree(max_degree);
            const BernoulliBasis basis(max_degree);
            for (int i = 0; i <= max_degree; ++i)
                out << "B_" << i << "(x) = " << to_string(basis.poly(i)) << "\n";
        } else if (conv_cmd->parsed()) {
            detail::run_convergence(out, load_problem(problem_path), detail::parse_degree_range(degrees_flag),
                                    quad_order, points_flag, csv_path);
        }
    } catch (const ParseError& e) {
        err << detail::ensure_word(e.what(), "parse", "parse error: ") << "\n";
        return 1;
    } catch (const ProblemFileError& e) {
        err << detail::ensure_word(e.what(), "parse", "parse error: ") << "\n";
        return 1;
    } catch (const SingularSystemError& e) {
        err << detail::ensure_word(e.what(), "singular", "singular system: ") << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        err << detail::ensure_word(e.what(), "argument", "argument error: ") << "\n";
        return 3;
    } catch (const EvalError& e) {
        err << detail::ensure_word(e.what(), "evaluation", "evaluation error: ") << "\n";
        return 4;
    } catch (const Error& e) {
        err << detail::ensure_word(e.what(), "evaluation", "evaluation error: ") << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << detail::ensure_word(e.what(), "evaluation", "evaluation error: ") << "\n";
        return 4;
    }
    return 0;
}

}  // namespace fredholm::cli
