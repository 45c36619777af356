#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "heinslab/errors.hpp"
#include "heinslab/types.hpp"

// Holomorphic expressions in complex variables z1..zn (space) and y1..ym
// (parameters). The grammar admits only holomorphic primitives, so every
// expression that parses is holomorphic by construction:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' uint)?
//   atom   := number | number'i' | ident | ident '(' expr ')' | '(' expr ')' | '-' atom
//
// Functions: exp, sin, cos (entire). Conjugation, modulus, real/imaginary
// parts are rejected with holomorphy_error; log and sqrt are rejected too
// because their principal branches are not holomorphic on a full model
// domain. Powers take nonnegative integer exponents only.

namespace heinslab {

enum class func_kind { exp_fn, sin_fn, cos_fn };

inline const char* func_name(func_kind f) {
    switch (f) {
        case func_kind::exp_fn: return "exp";
        case func_kind::sin_fn: return "sin";
        case func_kind::cos_fn: return "cos";
    }
    return "?";
}

enum class var_group : unsigned char { space, param };

struct expr_node;
using expr_ptr = std::shared_ptr<const expr_node>;

struct expr_node {
    struct literal {
        cplx value;
    };
    struct variable {
        var_group group;
        std::size_t index; // 0-based; z1 is {space, 0}
    };
    struct negate {
        expr_ptr operand;
    };
    struct binary {
        char op; // '+', '-', '*', '/'
        expr_ptr lhs;
        expr_ptr rhs;
    };
    struct power {
        expr_ptr base;
        unsigned exponent;
    };
    struct call {
        func_kind fn;
        expr_ptr arg;
    };

    using node_t = std::variant<literal, variable, negate, binary, power, call>;
    node_t v;
};

inline std::string variable_name(var_group g, std::size_t index) {
    return (g == var_group::space ? "z" : "y") + std::to_string(index + 1);
}

// ---------------------------------------------------------------------------
// Node constructors. make_* fold constants and prune zeros/ones so that the
// derivative of an expression not containing the variable collapses to the
// zero literal. The parser builds raw nodes instead, preserving the source
// structure.

inline expr_ptr raw_node(expr_node::node_t v) {
    return std::make_shared<expr_node>(expr_node{std::move(v)});
}

inline expr_ptr make_literal(cplx v) { return raw_node(expr_node::literal{v}); }
inline expr_ptr make_variable(var_group g, std::size_t index) {
    return raw_node(expr_node::variable{g, index});
}

inline const cplx* literal_value(const expr_ptr& e) {
    if (const auto* l = std::get_if<expr_node::literal>(&e->v)) return &l->value;
    return nullptr;
}

inline bool is_literal(const expr_ptr& e, cplx value) {
    const cplx* v = literal_value(e);
    return v && *v == value;
}

inline bool is_zero(const expr_ptr& e) { return is_literal(e, cplx{0.0, 0.0}); }
inline bool is_one(const expr_ptr& e) { return is_literal(e, cplx{1.0, 0.0}); }

inline expr_ptr make_neg(expr_ptr a) {
    if (is_zero(a)) return a;
    if (const cplx* v = literal_value(a)) return make_literal(-*v);
    if (const auto* n = std::get_if<expr_node::negate>(&a->v)) return n->operand;
    return raw_node(expr_node::negate{std::move(a)});
}

inline expr_ptr make_add(expr_ptr a, expr_ptr b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    const cplx *va = literal_value(a), *vb = literal_value(b);
    if (va && vb) return make_literal(*va + *vb);
    return raw_node(expr_node::binary{'+', std::move(a), std::move(b)});
}

inline expr_ptr make_sub(expr_ptr a, expr_ptr b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return make_neg(std::move(b));
    const cplx *va = literal_value(a), *vb = literal_value(b);
    if (va && vb) return make_literal(*va - *vb);
    return raw_node(expr_node::binary{'-', std::move(a), std::move(b)});
}

inline expr_ptr make_mul(expr_ptr a, expr_ptr b) {
    if (is_zero(a)) return a;
    if (is_zero(b)) return b;
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    const cplx *va = literal_value(a), *vb = literal_value(b);
    if (va && vb) return make_literal(*va * *vb);
    return raw_node(expr_node::binary{'*', std::move(a), std::move(b)});
}

inline expr_ptr make_div(expr_ptr a, expr_ptr b) {
    if (is_zero(a)) return a;
    if (is_one(b)) return a;
    return raw_node(expr_node::binary{'/', std::move(a), std::move(b)});
}

inline expr_ptr make_pow(expr_ptr base, unsigned exponent) {
    if (exponent == 0) return make_literal(cplx{1.0, 0.0});
    if (exponent == 1) return base;
    return raw_node(expr_node::power{std::move(base), exponent});
}

inline expr_ptr make_call(func_kind fn, expr_ptr arg) {
    return raw_node(expr_node::call{fn, std::move(arg)});
}

// ---------------------------------------------------------------------------
// Evaluation

inline cplx pow_uint(cplx base, unsigned k) {
    cplx result{1.0, 0.0};
    while (k) {
        if (k & 1u) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

inline cplx eval_node(const expr_node& n, std::span<const cplx> space,
                      std::span<const cplx> params) {
    struct visitor {
        std::span<const cplx> space;
        std::span<const cplx> params;
        cplx operator()(const expr_node::literal& l) const { return l.value; }
        cplx operator()(const expr_node::variable& v) const {
            const auto vals = v.group == var_group::space ? space : params;
            if (v.index >= vals.size())
                throw dimension_mismatch("variable " + variable_name(v.group, v.index) +
                                         " has no value bound");
            return vals[v.index];
        }
        cplx operator()(const expr_node::negate& n) const { return -eval_node(*n.operand, space, params); }
        cplx operator()(const expr_node::binary& b) const {
            const cplx l = eval_node(*b.lhs, space, params);
            const cplx r = eval_node(*b.rhs, space, params);
            switch (b.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                default: return l / r;
            }
        }
        cplx operator()(const expr_node::power& p) const {
            return pow_uint(eval_node(*p.base, space, params), p.exponent);
        }
        cplx operator()(const expr_node::call& c) const {
            const cplx a = eval_node(*c.arg, space, params);
            switch (c.fn) {
                case func_kind::exp_fn: return std::exp(a);
                case func_kind::sin_fn: return std::sin(a);
                default: return std::cos(a);
            }
        }
    };
    return std::visit(visitor{space, params}, n.v);
}

// ---------------------------------------------------------------------------
// Expression: a validated AST plus its free-variable list.

class expression {
public:
    expression() = default;

    explicit expression(expr_ptr root) : root_(std::move(root)) { collect_vars(); }

    const expr_ptr& root() const { return root_; }
    const std::vector<std::string>& free_vars() const { return free_vars_; }

    /// Highest 1-based variable index used per group (0 when the group is absent).
    std::size_t max_space_index() const { return max_space_; }
    std::size_t max_param_index() const { return max_param_; }

    cplx evaluate(std::span<const cplx> space, std::span<const cplx> params = {}) const {
        return eval_node(*root_, space, params);
    }

private:
    void collect_vars() {
        std::set<std::pair<int, std::size_t>> seen;
        walk(root_, seen);
    }

    void walk(const expr_ptr& e, std::set<std::pair<int, std::size_t>>& seen) {
        struct visitor {
            expression* self;
            std::set<std::pair<int, std::size_t>>* seen;
            void operator()(const expr_node::literal&) const {}
            void operator()(const expr_node::variable& v) const {
                auto key = std::make_pair(static_cast<int>(v.group), v.index);
                if (seen->insert(key).second)
                    self->free_vars_.push_back(variable_name(v.group, v.index));
                if (v.group == var_group::space)
                    self->max_space_ = std::max(self->max_space_, v.index + 1);
                else
                    self->max_param_ = std::max(self->max_param_, v.index + 1);
            }
            void operator()(const expr_node::negate& n) const { self->walk(n.operand, *seen); }
            void operator()(const expr_node::binary& b) const {
                self->walk(b.lhs, *seen);
                self->walk(b.rhs, *seen);
            }
            void operator()(const expr_node::power& p) const { self->walk(p.base, *seen); }
            void operator()(const expr_node::call& c) const { self->walk(c.arg, *seen); }
        };
        std::visit(visitor{this, &seen}, e->v);
    }

    expr_ptr root_;
    std::vector<std::string> free_vars_;
    std::size_t max_space_ = 0;
    std::size_t max_param_ = 0;
};

// ---------------------------------------------------------------------------
// Lexer / parser

namespace detail {

struct token {
    enum class kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    kind k = kind::end;
    std::size_t pos = 0;
    double value = 0.0;               // number payload
    bool imaginary = false;           // number carried the 'i' suffix
    bool integral = false;            // digits only: usable as an exponent
    unsigned long long int_value = 0; // valid when integral
    std::string text;                 // ident payload
};

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<token> lex(std::string_view src) {
    std::vector<token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            bool has_dot = false, has_exp = false;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                has_dot = true;
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    has_exp = true;
                    j = k;
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                }
            }
            const std::string text(src.substr(i, j - i));
            t.k = token::kind::number;
            t.value = std::strtod(text.c_str(), nullptr);
            t.integral = !has_dot && !has_exp;
            if (t.integral) t.int_value = std::strtoull(text.c_str(), nullptr, 10);
            // 'i' suffix makes the literal purely imaginary
            if (j < src.size() && src[j] == 'i' && (j + 1 >= src.size() || !ident_char(src[j + 1]))) {
                t.imaginary = true;
                t.integral = false;
                ++j;
            }
            i = j;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.k = token::kind::ident;
            t.text = std::string(src.substr(i, j - i));
            i = j;
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
            case '+': t.k = token::kind::plus; break;
            case '-': t.k = token::kind::minus; break;
            case '*': t.k = token::kind::star; break;
            case '/': t.k = token::kind::slash; break;
            case '^': t.k = token::kind::caret; break;
            case '(': t.k = token::kind::lparen; break;
            case ')': t.k = token::kind::rparen; break;
            default:
                throw syntax_error(i, "number, variable, operator or parenthesis",
                                   std::string("unexpected character '") + c + "'");
        }
        ++i;
        out.push_back(std::move(t));
    }
    token end;
    end.pos = src.size();
    out.push_back(end);
    return out;
}

class parser {
public:
    explicit parser(std::string_view src) : toks_(lex(src)) {}

    expr_ptr parse() {
        expr_ptr e = parse_expr();
        if (cur().k != token::kind::end)
            throw syntax_error(cur().pos, "operator or end of input", "trailing input");
        return e;
    }

private:
    const token& cur() const { return toks_[idx_]; }
    void advance() { ++idx_; }

    expr_ptr parse_expr() {
        expr_ptr lhs = parse_term();
        while (cur().k == token::kind::plus || cur().k == token::kind::minus) {
            const char op = cur().k == token::kind::plus ? '+' : '-';
            advance();
            expr_ptr rhs = parse_term();
            lhs = raw_node(expr_node::binary{op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    expr_ptr parse_term() {
        expr_ptr lhs = parse_factor();
        while (cur().k == token::kind::star || cur().k == token::kind::slash) {
            const char op = cur().k == token::kind::star ? '*' : '/';
            advance();
            expr_ptr rhs = parse_factor();
            lhs = raw_node(expr_node::binary{op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    expr_ptr parse_factor() {
        expr_ptr base = parse_atom();
        if (cur().k == token::kind::caret) {
            advance();
            const token& t = cur();
            if (t.k != token::kind::number || !t.integral)
                throw syntax_error(t.pos, "nonnegative integer exponent",
                                   "powers take literal nonnegative integer exponents");
            if (t.int_value > 0xffffffffull)
                throw syntax_error(t.pos, "exponent below 2^32", "exponent too large");
            const unsigned exponent = static_cast<unsigned>(t.int_value);
            advance();
            return raw_node(expr_node::power{std::move(base), exponent});
        }
        return base;
    }

    expr_ptr parse_atom() {
        const token& t = cur();
        switch (t.k) {
            case token::kind::number: {
                const cplx v = t.imaginary ? cplx{0.0, t.value} : cplx{t.value, 0.0};
                advance();
                return make_literal(v);
            }
            case token::kind::minus: {
                advance();
                expr_ptr inner = parse_atom();
                return raw_node(expr_node::negate{std::move(inner)});
            }
            case token::kind::lparen: {
                advance();
                expr_ptr e = parse_expr();
                expect(token::kind::rparen, "')'");
                return e;
            }
            case token::kind::ident:
                return parse_ident();
            default:
                throw syntax_error(t.pos, "number, variable, function call, '(' or '-'",
                                   "unexpected token");
        }
    }

    expr_ptr parse_ident() {
        const token t = cur();
        advance();
        const std::string& name = t.text;

        static const std::set<std::string> anti_holomorphic = {
            "conj", "conjugate", "bar", "abs", "mod", "re", "im", "real", "imag", "arg"};
        static const std::set<std::string> branch_cut = {"log", "ln", "sqrt", "pow"};
        if (anti_holomorphic.count(name))
            throw holomorphy_error(t.pos, name,
                                   "conjugation/modulus/real-part operations are not holomorphic");
        if (branch_cut.count(name))
            throw holomorphy_error(t.pos, name,
                                   "branch cuts break holomorphy on a full model domain; "
                                   "only entire primitives are admitted");

        if (cur().k == token::kind::lparen) {
            func_kind fn;
            if (name == "exp")
                fn = func_kind::exp_fn;
            else if (name == "sin")
                fn = func_kind::sin_fn;
            else if (name == "cos")
                fn = func_kind::cos_fn;
            else
                throw unknown_function(t.pos, name);
            advance();
            expr_ptr arg = parse_expr();
            expect(token::kind::rparen, "')'");
            return raw_node(expr_node::call{fn, std::move(arg)});
        }

        // variable: z<k> or y<k>, 1-based
        if ((name[0] == 'z' || name[0] == 'y') && name.size() > 1) {
            bool all_digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) all_digits = false;
            if (all_digits) {
                const unsigned long long index = std::strtoull(name.c_str() + 1, nullptr, 10);
                if (index == 0)
                    throw syntax_error(t.pos, "variable index >= 1", "variable indices start at 1");
                const var_group g = name[0] == 'z' ? var_group::space : var_group::param;
                return make_variable(g, static_cast<std::size_t>(index - 1));
            }
        }
        throw syntax_error(t.pos, "variable z<k> or y<k>",
                           "unrecognized identifier '" + name + "'");
    }

    void expect(token::kind k, const std::string& what) {
        if (cur().k != k) throw syntax_error(cur().pos, what, "unexpected token");
        advance();
    }

    std::vector<token> toks_;
    std::size_t idx_ = 0;
};

} // namespace detail

/// Parses source text in the expression grammar. Everything that parses is
/// holomorphic in each variable; non-holomorphic tokens are rejected.
inline expression parse_expression(std::string_view source) {
    return expression(detail::parser(source).parse());
}

// ---------------------------------------------------------------------------
// Symbolic differentiation

namespace detail {

inline expr_ptr derivative(const expr_ptr& e, var_group g, std::size_t index) {
    struct visitor {
        var_group g;
        std::size_t index;
        const expr_ptr& self;
        expr_ptr operator()(const expr_node::literal&) const { return make_literal({0.0, 0.0}); }
        expr_ptr operator()(const expr_node::variable& v) const {
            const bool match = v.group == g && v.index == index;
            return make_literal({match ? 1.0 : 0.0, 0.0});
        }
        expr_ptr operator()(const expr_node::negate& n) const {
            return make_neg(derivative(n.operand, g, index));
        }
        expr_ptr operator()(const expr_node::binary& b) const {
            expr_ptr dl = derivative(b.lhs, g, index);
            expr_ptr dr = derivative(b.rhs, g, index);
            switch (b.op) {
                case '+': return make_add(std::move(dl), std::move(dr));
                case '-': return make_sub(std::move(dl), std::move(dr));
                case '*':
                    return make_add(make_mul(std::move(dl), b.rhs), make_mul(b.lhs, std::move(dr)));
                default: // quotient rule
                    return make_div(
                        make_sub(make_mul(std::move(dl), b.rhs), make_mul(b.lhs, std::move(dr))),
                        make_pow(b.rhs, 2));
            }
        }
        expr_ptr operator()(const expr_node::power& p) const {
            expr_ptr db = derivative(p.base, g, index);
            expr_ptr factor = make_mul(make_literal({static_cast<double>(p.exponent), 0.0}),
                                       make_pow(p.base, p.exponent - 1));
            return make_mul(std::move(factor), std::move(db));
        }
        expr_ptr operator()(const expr_node::call& c) const {
            expr_ptr da = derivative(c.arg, g, index);
            switch (c.fn) {
                case func_kind::exp_fn:
                    return make_mul(make_call(func_kind::exp_fn, c.arg), std::move(da));
                case func_kind::sin_fn:
                    return make_mul(make_call(func_kind::cos_fn, c.arg), std::move(da));
                default:
                    return make_neg(make_mul(make_call(func_kind::sin_fn, c.arg), std::move(da)));
            }
        }
    };
    return std::visit(visitor{g, index, e}, e->v);
}

inline std::pair<var_group, std::size_t> parse_variable_name(std::string_view var) {
    if (var.size() >= 2 && (var[0] == 'z' || var[0] == 'y')) {
        bool all_digits = true;
        for (std::size_t i = 1; i < var.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(var[i]))) all_digits = false;
        if (all_digits) {
            const unsigned long long index = std::strtoull(std::string(var).c_str() + 1, nullptr, 10);
            if (index > 0)
                return {var[0] == 'z' ? var_group::space : var_group::param,
                        static_cast<std::size_t>(index - 1)};
        }
    }
    throw error("not a variable name: '" + std::string(var) + "' (expected z<k> or y<k>)");
}

} // namespace detail

/// Exact partial derivative with respect to `var` ("z2", "y1", ...).
/// The derivative of an expression not containing `var` is the zero literal.
inline expression symbolic_partial(const expression& e, std::string_view var) {
    const auto [g, index] = detail::parse_variable_name(var);
    return expression(detail::derivative(e.root(), g, index));
}

inline expression symbolic_partial(const expression& e, var_group g, std::size_t index) {
    return expression(detail::derivative(e.root(), g, index));
}

// ---------------------------------------------------------------------------
// Printing. The output reparses to an AST that evaluates bit-identically.

namespace detail {

// precedence levels used by the printer; NEG forces parentheses under any parent
enum print_prec : int { PREC_NEG = 0, PREC_ADD = 1, PREC_MUL = 2, PREC_POW = 4, PREC_ATOM = 5 };

inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::pair<std::string, int> print_node(const expr_ptr& e);

inline std::string print_wrapped(const expr_ptr& e, int min_prec) {
    auto [s, p] = print_node(e);
    if (p < min_prec) return "(" + s + ")";
    return s;
}

inline std::pair<std::string, int> print_node(const expr_ptr& e) {
    struct visitor {
        std::pair<std::string, int> operator()(const expr_node::literal& l) const {
            const double re = l.value.real(), im = l.value.imag();
            if (im == 0.0) {
                if (re < 0.0) return {"-" + format_real(-re), PREC_NEG};
                return {format_real(re), PREC_ATOM};
            }
            if (re == 0.0) {
                if (im < 0.0) return {"-" + format_real(-im) + "i", PREC_NEG};
                return {format_real(im) + "i", PREC_ATOM};
            }
            std::string s = "(" + format_real(re) + (im < 0.0 ? "-" : "+") +
                            format_real(std::abs(im)) + "i)";
            return {std::move(s), PREC_ATOM};
        }
        std::pair<std::string, int> operator()(const expr_node::variable& v) const {
            return {variable_name(v.group, v.index), PREC_ATOM};
        }
        std::pair<std::string, int> operator()(const expr_node::negate& n) const {
            return {"-" + print_wrapped(n.operand, PREC_ATOM), PREC_NEG};
        }
        std::pair<std::string, int> operator()(const expr_node::binary& b) const {
            const bool additive = b.op == '+' || b.op == '-';
            const int prec = additive ? PREC_ADD : PREC_MUL;
            std::string lhs = print_wrapped(b.lhs, prec);
            std::string rhs = print_wrapped(b.rhs, prec + 1); // left-associative
            return {lhs + b.op + rhs, prec};
        }
        std::pair<std::string, int> operator()(const expr_node::power& p) const {
            return {print_wrapped(p.base, PREC_ATOM) + "^" + std::to_string(p.exponent),
                    PREC_POW};
        }
        std::pair<std::string, int> operator()(const expr_node::call& c) const {
            return {std::string(func_name(c.fn)) + "(" + print_node(c.arg).first + ")",
                    PREC_ATOM};
        }
    };
    return std::visit(visitor{}, e->v);
}

} // namespace detail

inline std::string to_string(const expression& e) { return detail::print_node(e.root()).first; }

// ---------------------------------------------------------------------------
// Substitution (used to bind parameter values into a family slice)

namespace detail {

inline expr_ptr substitute_group(const expr_ptr& e, var_group g, std::span<const cplx> values) {
    struct visitor {
        var_group g;
        std::span<const cplx> values;
        const expr_ptr& self;
        expr_ptr operator()(const expr_node::literal&) const { return self; }
        expr_ptr operator()(const expr_node::variable& v) const {
            if (v.group != g) return self;
            if (v.index >= values.size())
                throw dimension_mismatch("no value for " + variable_name(v.group, v.index));
            return make_literal(values[v.index]);
        }
        expr_ptr operator()(const expr_node::negate& n) const {
            return raw_node(expr_node::negate{substitute_group(n.operand, g, values)});
        }
        expr_ptr operator()(const expr_node::binary& b) const {
            return raw_node(expr_node::binary{b.op, substitute_group(b.lhs, g, values),
                                              substitute_group(b.rhs, g, values)});
        }
        expr_ptr operator()(const expr_node::power& p) const {
            return raw_node(expr_node::power{substitute_group(p.base, g, values), p.exponent});
        }
        expr_ptr operator()(const expr_node::call& c) const {
            return raw_node(expr_node::call{c.fn, substitute_group(c.arg, g, values)});
        }
    };
    return std::visit(visitor{g, values, e}, e->v);
}

} // namespace detail

// ---------------------------------------------------------------------------
// HolomorphicMap: n components in z1..zn, optionally depending on y1..ym.

class holomorphic_map {
public:
    holomorphic_map() = default;

    holomorphic_map(std::vector<expression> components, std::size_t space_dim,
                    std::size_t param_dim)
        : comps_(std::move(components)), n_(space_dim), m_(param_dim) {
        if (comps_.size() != n_)
            throw dimension_mismatch("a self-map needs exactly one component per space variable (" +
                                     std::to_string(comps_.size()) + " components, dimension " +
                                     std::to_string(n_) + ")");
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (comps_[i].max_space_index() > n_)
                throw dimension_mismatch("component " + std::to_string(i + 1) + " references z" +
                                         std::to_string(comps_[i].max_space_index()) +
                                         " but the space dimension is " + std::to_string(n_));
            if (comps_[i].max_param_index() > m_)
                throw dimension_mismatch("component " + std::to_string(i + 1) + " references y" +
                                         std::to_string(comps_[i].max_param_index()) + " but only " +
                                         std::to_string(m_) + " parameters are declared");
        }
    }

    std::size_t space_dim() const { return n_; }
    std::size_t param_dim() const { return m_; }
    const std::vector<expression>& components() const { return comps_; }

    /// Componentwise evaluation at (z, y). Pure; throws numeric_overflow if a
    /// component comes out non-finite (e.g. a division pole was hit).
    cvec evaluate(std::span<const cplx> z, std::span<const cplx> y = {}) const {
        if (z.size() != n_)
            throw dimension_mismatch("evaluate: got " + std::to_string(z.size()) +
                                     " space values, expected " + std::to_string(n_));
        if (y.size() != m_)
            throw dimension_mismatch("evaluate: got " + std::to_string(y.size()) +
                                     " parameter values, expected " + std::to_string(m_));
        cvec out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = comps_[i].evaluate(z, y);
            if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
                throw numeric_overflow("component " + std::to_string(i + 1) +
                                       " evaluated to a non-finite value");
        }
        return out;
    }

    /// The slice f_y: parameters replaced by literals, leaving a map in z only.
    holomorphic_map bind_params(std::span<const cplx> y) const {
        if (y.size() != m_)
            throw dimension_mismatch("bind_params: got " + std::to_string(y.size()) +
                                     " values, expected " + std::to_string(m_));
        std::vector<expression> bound;
        bound.reserve(n_);
        for (const expression& c : comps_)
            bound.emplace_back(detail::substitute_group(c.root(), var_group::param, y));
        return holomorphic_map(std::move(bound), n_, 0);
    }

private:
    std::vector<expression> comps_;
    std::size_t n_ = 0;
    std::size_t m_ = 0;
};

inline holomorphic_map parse_map(const std::vector<std::string>& sources, std::size_t space_dim,
                                 std::size_t param_dim) {
    std::vector<expression> comps;
    comps.reserve(sources.size());
    for (const std::string& s : sources) comps.push_back(parse_expression(s));
    return holomorphic_map(std::move(comps), space_dim, param_dim);
}

/// Componentwise difference a - b (used for the parameter increment f_y - f_{y0}).
inline holomorphic_map map_difference(const holomorphic_map& a, const holomorphic_map& b) {
    if (a.space_dim() != b.space_dim() || a.param_dim() != b.param_dim())
        throw dimension_mismatch("map_difference: shape mismatch");
    std::vector<expression> comps;
    comps.reserve(a.space_dim());
    for (std::size_t i = 0; i < a.space_dim(); ++i)
        comps.emplace_back(make_sub(a.components()[i].root(), b.components()[i].root()));
    return holomorphic_map(std::move(comps), a.space_dim(), a.param_dim());
}

} // namespace heinslab
