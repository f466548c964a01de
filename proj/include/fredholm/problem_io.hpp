#pragma once

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fredholm/errors.hpp"
#include "fredholm/expr.hpp"
#include "fredholm/galerkin.hpp"

namespace fredholm {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

// Accepts an integer ("-1"), an integer ratio ("3/2"), or a decimal
// ("0.25"); the first two carry an exact rational alongside the double.
inline Scalar parse_scalar(std::string_view text) {
    const std::string s = detail::trim(text);
    if (s.empty()) throw ProblemFileError("parse error: empty number");
    std::string_view body = s;
    bool negative = false;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (detail::all_digits(body)) {
        Rational r{BigInt(std::string(body)), BigInt(1)};
        return Scalar::from_rational(negative ? -r : r);
    }
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (detail::all_digits(num) && detail::all_digits(den)) {
            if (BigInt(std::string(den)) == 0)
                throw ProblemFileError("parse error: ratio with zero denominator '" + s + "'");
            Rational r{BigInt(std::string(num)), BigInt(std::string(den))};
            return Scalar::from_rational(negative ? -r : r);
        }
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        throw ProblemFileError("parse error: invalid number '" + s + "'");
    return Scalar::from_double(v);
}

// Line-oriented `key = value` problem description. Keys: interval, lambda,
// a, kernel, f, exact (optional). '#' starts a comment, blank lines are
// ignored, every other key is rejected, duplicates are rejected.
inline Problem parse_problem(std::string_view text, std::string_view origin = "<input>") {
    std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)
    std::istringstream stream{std::string(text)};
    std::string raw;
    int lineno = 0;
    auto fail = [&](int line, const std::string& msg) -> void {
        throw ProblemFileError(std::string(origin) + ":" + std::to_string(line) + ": " + msg);
    };
    while (std::getline(stream, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "parse error: expected 'key = value'");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        static const std::array<std::string_view, 6> known = {"interval", "lambda", "a", "kernel", "f", "exact"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail(lineno, "parse error: unknown key '" + key + "'");
        if (entries.count(key)) fail(lineno, "parse error: duplicate key '" + key + "'");
        if (value.empty()) fail(lineno, "parse error: empty value for key '" + key + "'");
        entries[key] = {value, lineno};
    }
    for (const char* required : {"interval", "lambda", "a", "kernel", "f"})
        if (!entries.count(required))
            throw ProblemFileError(std::string(origin) + ": parse error: missing key '" + required + "'");

    auto value_of = [&](const std::string& key) -> const std::pair<std::string, int>& {
        return entries.at(key);
    };
    auto parse_expr_value = [&](const std::string& key) -> ExprPtr {
        const auto& [value, line] = value_of(key);
        try {
            return parse(value);
        } catch (const ParseError& e) {
            fail(line, std::string(e.what()) + " in value of '" + key + "'");
        }
        return nullptr;  // unreachable
    };

    Problem p{};
    {
        const auto& [value, line] = value_of("interval");
        std::istringstream iv(value);
        std::string first, second, extra;
        iv >> first >> second;
        if (second.empty() || (iv >> extra))
            fail(line, "parse error: interval needs exactly two endpoints");
        try {
            p.lower = parse_scalar(first);
            p.upper = parse_scalar(second);
        } catch (const ProblemFileError& e) {
            fail(line, e.what());
        }
        if (!(p.lower.value < p.upper.value))
            fail(line, "validation error: interval requires lower < upper");
    }
    {
        const auto& [value, line] = value_of("lambda");
        try {
            p.lambda = parse_scalar(value);
        } catch (const ProblemFileError& e) {
            fail(line, e.what());
        }
    }
    p.coefficient = parse_expr_value("a");
    p.source = parse_expr_value("f");
    if (entries.count("exact")) p.exact = parse_expr_value("exact");

    const ExprPtr kernel_expr = parse_expr_value("kernel");
    if (auto terms = detect_separable(kernel_expr))
        p.kernel = SeparableKernel{std::move(*terms)};
    else
        p.kernel = GeneralKernel{kernel_expr};

    try {
        validate(p);
    } catch (const ProblemFileError& e) {
        throw ProblemFileError(std::string(origin) + ": " + e.what());
    }
    return p;
}

inline Problem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ProblemFileError("parse error: cannot read problem file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str(), path.string());
}

// The four stock problems: polynomial kernels on [-1,1] and [0,1] with
// polynomial exact solutions, plus one exponential kernel whose solution
// is e^x / (2 - e^2).
inline const std::string& builtin_example_text(int id) {
    static const std::array<std::string, 4> texts = {
        "# identity coefficient, symmetric polynomial kernel\n"
        "interval = -1 1\n"
        "lambda = -1\n"
        "a = 1\n"
        "kernel = x*t + x^2*t^2\n"
        "f = 1\n"
        "exact = 1 + (10/9)*x^2\n",
        "interval = -1 1\n"
        "lambda = -1\n"
        "a = 1\n"
        "kernel = x^4 - t^4\n"
        "f = x\n"
        "exact = x\n",
        "interval = 0 1\n"
        "lambda = -1\n"
        "a = 1\n"
        "kernel = t*x^2 + x*t^2\n"
        "f = x\n"
        "exact = (180/119)*x + (80/119)*x^2\n",
        "interval = 0 1\n"
        "lambda = -1\n"
        "a = 1\n"
        "kernel = 2*exp(x)*exp(t)\n"
        "f = exp(x)\n"
        "exact = exp(x)/(2 - e^2)\n",
    };
    if (id < 1 || id > 4)
        throw ArgumentError("argument error: example id must be 1..4, got " + std::to_string(id));
    return texts[static_cast<std::size_t>(id - 1)];
}

inline Problem builtin_example(int id) {
    return parse_problem(builtin_example_text(id), "example-" + std::to_string(id));
}

}  // namespace fredholm
