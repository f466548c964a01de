#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fredholm/errors.hpp"
#include "fredholm/polynomial.hpp"
#include "fredholm/rational.hpp"

namespace fredholm {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class FnId { exp, sin, cos, tan, log, sqrt, abs };
enum class ConstId { pi, e };

// Literal; `exact` is set only when the literal was written as a plain
// integer, which is what keeps the exact solve path honest about decimals.
struct NumberNode {
    double value;
    std::optional<Rational> exact;
};
struct VarNode {
    char name;  // 'x' or 't'
};
struct ConstNode {
    ConstId id;
};
struct NegNode {
    ExprPtr arg;
};
struct BinNode {
    char op;  // one of + - * / ^
    ExprPtr lhs;
    ExprPtr rhs;
};
struct CallNode {
    FnId fn;
    ExprPtr arg;
};

class Expr {
public:
    using Node = std::variant<NumberNode, VarNode, ConstNode, NegNode, BinNode, CallNode>;
    explicit Expr(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

inline ExprPtr make_number(Rational r) {
    const double v = r.to_double();
    return std::make_shared<Expr>(NumberNode{v, std::move(r)});
}
inline ExprPtr make_number(double v) { return std::make_shared<Expr>(NumberNode{v, std::nullopt}); }
inline ExprPtr make_var(char name) {
    if (name != 'x' && name != 't') throw ArgumentError("argument error: variables are limited to x and t");
    return std::make_shared<Expr>(VarNode{name});
}
inline ExprPtr make_const(ConstId id) { return std::make_shared<Expr>(ConstNode{id}); }
inline ExprPtr make_neg(ExprPtr arg) { return std::make_shared<Expr>(NegNode{std::move(arg)}); }
inline ExprPtr make_bin(char op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(BinNode{op, std::move(lhs), std::move(rhs)});
}
inline ExprPtr make_call(FnId fn, ExprPtr arg) { return std::make_shared<Expr>(CallNode{fn, std::move(arg)}); }

namespace detail {

struct Token {
    enum class Kind { number, ident, op, lparen, rparen, end };
    Kind kind = Kind::end;
    std::size_t offset = 0;
    double value = 0.0;                  // number
    std::optional<Rational> exact;       // number, integer literals only
    std::string text;                    // ident
    char op = 0;                         // op
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token tok;
        tok.offset = pos_;
        if (pos_ >= src_.size()) {
            tok.kind = Token::Kind::end;
            return tok;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok.kind = Token::Kind::ident;
            tok.text = std::string(src_.substr(start, pos_ - start));
            return tok;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                tok.kind = Token::Kind::op;
                tok.op = c;
                ++pos_;
                return tok;
            case '(':
                tok.kind = Token::Kind::lparen;
                ++pos_;
                return tok;
            case ')':
                tok.kind = Token::Kind::rparen;
                ++pos_;
                return tok;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
    }

private:
    Token lex_number() {
        const std::size_t start = pos_;
        bool integral = true;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            integral = false;
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        // exponent part only if at least one digit follows; otherwise the
        // 'e' is an identifier (Euler's constant) and stays unconsumed
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
            if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
                integral = false;
                pos_ = probe;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        const std::string slice(src_.substr(start, pos_ - start));
        Token tok;
        tok.kind = Token::Kind::number;
        tok.offset = start;
        try {
            tok.value = std::stod(slice);
        } catch (const std::out_of_range&) {
            throw ParseError("number literal out of range", start);
        }
        if (integral) tok.exact = Rational(BigInt(slice), BigInt(1));
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Grammar, loosest to tightest binding:
//   expr   := term   { ('+'|'-') term }
//   term   := factor { ('*'|'/') factor }
//   factor := '-' factor | power
//   power  := atom [ '^' factor ]          (right-associative)
//   atom   := number | var | const | fn '(' expr ')' | '(' expr ')'
// No implicit multiplication: "x t" and "2x" are syntax errors.
class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        if (current_.kind != Token::Kind::end) {
            if (current_.kind == Token::Kind::rparen)
                throw ParseError("unbalanced parentheses: unmatched ')'", current_.offset);
            throw ParseError("expected operator or end of input", current_.offset);
        }
        return e;
    }

private:
    void advance() { current_ = lexer_.next(); }

    bool at_op(char c) const { return current_.kind == Token::Kind::op && current_.op == c; }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (at_op('+') || at_op('-')) {
            const char op = current_.op;
            advance();
            lhs = make_bin(op, std::move(lhs), parse_term());
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (at_op('*') || at_op('/')) {
            const char op = current_.op;
            advance();
            lhs = make_bin(op, std::move(lhs), parse_factor());
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        if (at_op('-')) {
            advance();
            return make_neg(parse_factor());
        }
        if (at_op('+')) {  // unary plus is harmless, accept and drop it
            advance();
            return parse_factor();
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (at_op('^')) {
            advance();
            return make_bin('^', std::move(base), parse_factor());
        }
        return base;
    }

    ExprPtr parse_atom() {
        switch (current_.kind) {
            case Token::Kind::number: {
                ExprPtr e = current_.exact ? make_number(*current_.exact) : make_number(current_.value);
                advance();
                return e;
            }
            case Token::Kind::ident:
                return parse_ident();
            case Token::Kind::lparen: {
                const std::size_t open_at = current_.offset;
                advance();
                ExprPtr e = parse_expr();
                if (current_.kind != Token::Kind::rparen)
                    throw ParseError("unbalanced parentheses: '(' at offset " + std::to_string(open_at) +
                                         " is never closed",
                                     current_.offset);
                advance();
                return e;
            }
            case Token::Kind::end:
                throw ParseError("expected a number, variable, function call, or '('", current_.offset);
            default:
                throw ParseError("expected a number, variable, function call, or '('", current_.offset);
        }
    }

    ExprPtr parse_ident() {
        const std::string name = current_.text;
        const std::size_t at = current_.offset;
        advance();
        if (name == "x" || name == "t") return make_var(name[0]);
        if (name == "pi") return make_const(ConstId::pi);
        if (name == "e") return make_const(ConstId::e);
        static const std::pair<const char*, FnId> fns[] = {
            {"exp", FnId::exp}, {"sin", FnId::sin}, {"cos", FnId::cos},   {"tan", FnId::tan},
            {"log", FnId::log}, {"sqrt", FnId::sqrt}, {"abs", FnId::abs},
        };
        for (const auto& [fname, id] : fns) {
            if (name == fname) {
                if (current_.kind != Token::Kind::lparen)
                    throw ParseError("expected '(' after function '" + name + "'", current_.offset);
                advance();
                ExprPtr arg = parse_expr();
                if (current_.kind != Token::Kind::rparen)
                    throw ParseError("unbalanced parentheses: missing ')' after argument of '" + name + "'",
                                     current_.offset);
                advance();
                return make_call(id, std::move(arg));
            }
        }
        throw ParseError("unknown identifier '" + name + "'", at);
    }

    Lexer lexer_;
    Token current_;
};

}  // namespace detail

inline ExprPtr parse(std::string_view src) { return detail::Parser(src).parse(); }

namespace detail {

[[noreturn]] inline void eval_fail(const std::string& what, double operand) {
    std::ostringstream os;
    os.precision(17);
    os << "evaluation error: " << what << " (operand " << operand << ")";
    throw EvalError(os.str());
}

inline const char* fn_name(FnId fn) {
    switch (fn) {
        case FnId::exp: return "exp";
        case FnId::sin: return "sin";
        case FnId::cos: return "cos";
        case FnId::tan: return "tan";
        case FnId::log: return "log";
        case FnId::sqrt: return "sqrt";
        case FnId::abs: return "abs";
    }
    return "?";
}

}  // namespace detail

inline double eval(const Expr& e, double x, double t = 0.0) {
    return std::visit(
        [&](const auto& node) -> double {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, NumberNode>) {
                return node.value;
            } else if constexpr (std::is_same_v<N, VarNode>) {
                return node.name == 'x' ? x : t;
            } else if constexpr (std::is_same_v<N, ConstNode>) {
                return node.id == ConstId::pi ? std::numbers::pi : std::numbers::e;
            } else if constexpr (std::is_same_v<N, NegNode>) {
                return -eval(*node.arg, x, t);
            } else if constexpr (std::is_same_v<N, BinNode>) {
                const double l = eval(*node.lhs, x, t);
                const double r = eval(*node.rhs, x, t);
                double v = 0.0;
                switch (node.op) {
                    case '+': v = l + r; break;
                    case '-': v = l - r; break;
                    case '*': v = l * r; break;
                    case '/':
                        if (r == 0.0) detail::eval_fail("division by zero", l);
                        v = l / r;
                        break;
                    case '^':
                        v = (l == 0.0 && r == 0.0) ? 1.0 : std::pow(l, r);
                        break;
                }
                if (!std::isfinite(v))
                    detail::eval_fail(std::string("non-finite result of '") + node.op + "'", l);
                return v;
            } else if constexpr (std::is_same_v<N, CallNode>) {
                const double a = eval(*node.arg, x, t);
                double v = 0.0;
                switch (node.fn) {
                    case FnId::exp: v = std::exp(a); break;
                    case FnId::sin: v = std::sin(a); break;
                    case FnId::cos: v = std::cos(a); break;
                    case FnId::tan: v = std::tan(a); break;
                    case FnId::log:
                        if (a <= 0.0) detail::eval_fail("log of non-positive value", a);
                        v = std::log(a);
                        break;
                    case FnId::sqrt:
                        if (a < 0.0) detail::eval_fail("sqrt of negative value", a);
                        v = std::sqrt(a);
                        break;
                    case FnId::abs: v = std::abs(a); break;
                }
                if (!std::isfinite(v))
                    detail::eval_fail(std::string("non-finite result of '") + detail::fn_name(node.fn) + "'", a);
                return v;
            }
        },
        e.node());
}

inline bool uses_var(const Expr& e, char name) {
    return std::visit(
        [&](const auto& node) -> bool {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, VarNode>) {
                return node.name == name;
            } else if constexpr (std::is_same_v<N, NegNode>) {
                return uses_var(*node.arg, name);
            } else if constexpr (std::is_same_v<N, BinNode>) {
                return uses_var(*node.lhs, name) || uses_var(*node.rhs, name);
            } else if constexpr (std::is_same_v<N, CallNode>) {
                return uses_var(*node.arg, name);
            } else {
                return false;
            }
        },
        e.node());
}

namespace detail {

// Printing precedence; parenthesise any child that binds looser than the
// context requires, and equal-precedence right children, so the printed
// tree is byte-for-byte re-parseable into the same shape.
inline int print_prec(const Expr& e) {
    return std::visit(
        [](const auto& node) -> int {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, BinNode>) {
                switch (node.op) {
                    case '+': case '-': return 1;
                    case '*': case '/': return 2;
                    case '^': return 4;
                }
                return 1;
            } else if constexpr (std::is_same_v<N, NegNode>) {
                return 3;
            } else {
                return 5;
            }
        },
        e.node());
}

inline std::string number_str(const NumberNode& n) {
    if (n.exact) return n.exact->to_string();
    std::ostringstream os;
    os.precision(17);
    os << n.value;
    return os.str();
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using N = std::decay_t<decltype(node)>;
            auto wrap = [](const Expr& child, int min_prec) {
                std::string s = to_string(child);
                if (detail::print_prec(child) < min_prec) return "(" + s + ")";
                return s;
            };
            if constexpr (std::is_same_v<N, NumberNode>) {
                return detail::number_str(node);
            } else if constexpr (std::is_same_v<N, VarNode>) {
                return std::string(1, node.name);
            } else if constexpr (std::is_same_v<N, ConstNode>) {
                return node.id == ConstId::pi ? "pi" : "e";
            } else if constexpr (std::is_same_v<N, NegNode>) {
                return "-" + wrap(*node.arg, 3);
            } else if constexpr (std::is_same_v<N, BinNode>) {
                const int p = detail::print_prec(e);
                if (node.op == '^') return wrap(*node.lhs, 5) + "^" + wrap(*node.rhs, 3);
                return wrap(*node.lhs, p) + " " + node.op + " " + wrap(*node.rhs, p + 1);
            } else if constexpr (std::is_same_v<N, CallNode>) {
                return std::string(detail::fn_name(node.fn)) + "(" + to_string(*node.arg) + ")";
            }
        },
        e.node());
}

// Exact polynomial extraction. Returns the polynomial in `var` when the
// expression is built from integer literals, `var`, + - *, ^ with exponents
// that fold to nonnegative integers, and / by a nonzero folded constant.
// Decimal literals, the named constants, calls, and the other variable all
// disqualify; absence means "use the quadrature path", never an error.
inline std::optional<Polynomial<Rational>> detect_polynomial(const Expr& e, char var) {
    using Poly = Polynomial<Rational>;
    return std::visit(
        [&](const auto& node) -> std::optional<Poly> {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, NumberNode>) {
                if (!node.exact) return std::nullopt;
                return Poly::constant(*node.exact);
            } else if constexpr (std::is_same_v<N, VarNode>) {
                if (node.name != var) return std::nullopt;
                return Poly::monomial(Rational(1), 1);
            } else if constexpr (std::is_same_v<N, ConstNode>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<N, NegNode>) {
                auto p = detect_polynomial(*node.arg, var);
                if (!p) return std::nullopt;
                return -*p;
            } else if constexpr (std::is_same_v<N, BinNode>) {
                auto l = detect_polynomial(*node.lhs, var);
                if (!l) return std::nullopt;
                auto r = detect_polynomial(*node.rhs, var);
                if (!r) return std::nullopt;
                switch (node.op) {
                    case '+': return *l + *r;
                    case '-': return *l - *r;
                    case '*': return *l * *r;
                    case '/': {
                        if (r->degree() > 0 || r->is_zero()) return std::nullopt;
                        return *l * (Rational(1) / r->coeff(0));
                    }
                    case '^': {
                        if (r->degree() > 0) return std::nullopt;
                        const Rational exponent = r->coeff(0);
                        if (!exponent.is_integer() || exponent < Rational(0)) return std::nullopt;
                        if (exponent > Rational(4096)) return std::nullopt;  // keep memory bounded
                        return l->pow(exponent.num().convert_to<unsigned>());
                    }
                }
                return std::nullopt;
            } else {
                return std::nullopt;
            }
        },
        e.node());
}

// One additive term of a separable kernel: k-term = g(x) * h(t).
struct SeparableTerm {
    ExprPtr g;  // may reference x only
    ExprPtr h;  // may reference t only
};

namespace detail {

inline void collect_terms(const ExprPtr& e, bool negated, std::vector<std::pair<ExprPtr, bool>>& out) {
    if (const auto* bin = std::get_if<BinNode>(&e->node()); bin && (bin->op == '+' || bin->op == '-')) {
        collect_terms(bin->lhs, negated, out);
        collect_terms(bin->rhs, bin->op == '-' ? !negated : negated, out);
        return;
    }
    if (const auto* neg = std::get_if<NegNode>(&e->node())) {
        collect_terms(neg->arg, !negated, out);
        return;
    }
    out.emplace_back(e, negated);
}

inline void collect_factors(const ExprPtr& e, bool inverted, std::vector<std::pair<ExprPtr, bool>>& out) {
    if (const auto* bin = std::get_if<BinNode>(&e->node()); bin && (bin->op == '*' || bin->op == '/')) {
        collect_factors(bin->lhs, inverted, out);
        collect_factors(bin->rhs, bin->op == '/' ? !inverted : inverted, out);
        return;
    }
    if (const auto* neg = std::get_if<NegNode>(&e->node())) {
        out.emplace_back(make_number(Rational(-1)), false);
        collect_factors(neg->arg, inverted, out);
        return;
    }
    out.emplace_back(e, inverted);
}

inline ExprPtr rebuild_product(const std::vector<std::pair<ExprPtr, bool>>& factors) {
    ExprPtr acc;
    for (const auto& [f, inv] : factors) {
        if (inv) continue;
        acc = acc ? make_bin('*', acc, f) : f;
    }
    if (!acc) acc = make_number(Rational(1));
    for (const auto& [f, inv] : factors) {
        if (inv) acc = make_bin('/', acc, f);
    }
    return acc;
}

}  // namespace detail

// Purely syntactic separation of a kernel into sum-of-products form: each
// additive term must split multiplicatively into an x-only part and a
// t-only part. No algebra is attempted beyond flattening through
// + - * / and unary minus.
inline std::optional<std::vector<SeparableTerm>> detect_separable(const ExprPtr& e) {
    std::vector<std::pair<ExprPtr, bool>> terms;
    detail::collect_terms(e, false, terms);
    std::vector<SeparableTerm> out;
    out.reserve(terms.size());
    for (const auto& [term, negated] : terms) {
        std::vector<std::pair<ExprPtr, bool>> factors;
        detail::collect_factors(term, false, factors);
        std::vector<std::pair<ExprPtr, bool>> x_side;
        std::vector<std::pair<ExprPtr, bool>> t_side;
        for (const auto& factor : factors) {
            const bool in_x = uses_var(*factor.first, 'x');
            const bool in_t = uses_var(*factor.first, 't');
            if (in_x && in_t) return std::nullopt;
            if (in_t)
                t_side.push_back(factor);
            else
                x_side.push_back(factor);  // x-only factors and constants
        }
        ExprPtr g = detail::rebuild_product(x_side);
        const ExprPtr h = detail::rebuild_product(t_side);
        if (negated) {
            if (const auto* num = std::get_if<NumberNode>(&g->node()); num && num->exact)
                g = make_number(-*num->exact);
            else
                g = make_neg(g);
        }
        out.push_back(SeparableTerm{std::move(g), h});
    }
    return out;
}

}  // namespace fredholm
