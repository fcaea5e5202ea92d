#include "kahler4/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "kahler4/errors.hpp"

namespace kahler4 {

namespace {

const std::array<const char*, 9> kFunctions = {"sin",  "cos", "tan", "sinh", "cosh",
                                               "exp",  "log", "sqrt", "neg"};

}  // namespace

bool is_known_function(const std::string& name) {
    for (const char* f : kFunctions)
        if (name == f) return true;
    return false;
}

ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    return e;
}

ExprPtr make_ident(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Ident;
    e->name = std::move(name);
    return e;
}

ExprPtr make_unary(ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Unary;
    e->op = '-';
    e->lhs = std::move(operand);
    return e;
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Binary;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr make_call(std::string func, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->name = std::move(func);
    e->lhs = std::move(arg);
    return e;
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& src) : s_(src) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_char(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool consume_char(char c) {
        if (peek_char(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_char(char c, const char* what) {
        if (!consume_char(c)) throw SyntaxError(what, pos_);
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (consume_char('+'))
                lhs = make_binary('+', lhs, term());
            else if (consume_char('-'))
                lhs = make_binary('-', lhs, term());
            else
                return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (consume_char('*'))
                lhs = make_binary('*', lhs, factor());
            else if (consume_char('/'))
                lhs = make_binary('/', lhs, factor());
            else
                return lhs;
        }
    }

    ExprPtr factor() {
        if (consume_char('-')) return make_unary(factor());
        ExprPtr b = base();
        if (consume_char('^')) return make_binary('^', b, factor());
        return b;
    }

    ExprPtr base() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect_char(')', "expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (peek_char('(')) {
                if (!is_known_function(name)) throw UnknownIdentifier(name);
                ++pos_;
                ExprPtr arg = expr();
                expect_char(')', "expected ')'");
                return make_call(std::move(name), std::move(arg));
            }
            if (is_known_function(name)) throw SyntaxError("expected '(' after function name", pos_);
            return make_ident(std::move(name));
        }
        throw SyntaxError("unexpected character", pos_);
    }

    ExprPtr number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // the 'e' belongs to something else
            }
        }
        std::string text = s_.substr(start, pos_ - start);
        try {
            return make_number(std::stod(text));
        } catch (const std::exception&) {
            throw SyntaxError("malformed number", start);
        }
    }
};

// Precedence levels for printing: higher binds tighter.
constexpr int kLevelAdd = 1;
constexpr int kLevelMul = 2;
constexpr int kLevelUnary = 3;
constexpr int kLevelPow = 4;
constexpr int kLevelAtom = 5;

int node_level(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Number:
        case ExprKind::Ident:
        case ExprKind::Call:
            return kLevelAtom;
        case ExprKind::Unary:
            return kLevelUnary;
        case ExprKind::Binary:
            if (e.op == '^') return kLevelPow;
            if (e.op == '*' || e.op == '/') return kLevelMul;
            return kLevelAdd;
    }
    return kLevelAtom;
}

std::string format_number(double v) {
    // Shortest decimal form that parses back to the same double.
    for (int prec = 1; prec <= 17; ++prec) {
        std::ostringstream os;
        os.precision(prec);
        os << v;
        std::string text = os.str();
        if (std::strtod(text.c_str(), nullptr) == v) return text;
    }
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void print_node(const Expr& e, int min_level, std::string& out) {
    bool parens = node_level(e) < min_level;
    if (parens) out += '(';
    switch (e.kind) {
        case ExprKind::Number:
            out += format_number(e.number);
            break;
        case ExprKind::Ident:
            out += e.name;
            break;
        case ExprKind::Call:
            out += e.name;
            out += '(';
            print_node(*e.lhs, kLevelAdd, out);
            out += ')';
            break;
        case ExprKind::Unary:
            out += '-';
            print_node(*e.lhs, kLevelUnary, out);
            break;
        case ExprKind::Binary:
            if (e.op == '^') {
                print_node(*e.lhs, kLevelAtom, out);
                out += '^';
                print_node(*e.rhs, kLevelUnary, out);
            } else if (e.op == '*' || e.op == '/') {
                print_node(*e.lhs, kLevelMul, out);
                out += e.op;
                print_node(*e.rhs, kLevelUnary, out);
            } else {
                print_node(*e.lhs, kLevelAdd, out);
                out += e.op;
                print_node(*e.rhs, kLevelMul, out);
            }
            break;
    }
    if (parens) out += ')';
}

}  // namespace

ExprPtr parse(const std::string& src) { return Parser(src).run(); }

std::string print(const Expr& e) {
    std::string out;
    print_node(e, kLevelAdd, out);
    return out;
}

std::string print(const ExprPtr& e) { return print(*e); }

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Number:
            return a.number == b.number;
        case ExprKind::Ident:
            return a.name == b.name;
        case ExprKind::Unary:
            return expr_equal(*a.lhs, *b.lhs);
        case ExprKind::Call:
            return a.name == b.name && expr_equal(*a.lhs, *b.lhs);
        case ExprKind::Binary:
            return a.op == b.op && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
    return false;
}

namespace {

double scalar_ipow(double base, long long n) {
    if (n == 0) return 1.0;
    bool invert = n < 0;
    unsigned long long m = invert ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                                  : static_cast<unsigned long long>(n);
    double acc = base;
    for (unsigned long long i = 1; i < m; ++i) acc *= base;
    return invert ? 1.0 / acc : acc;
}

double scalar_function(const std::string& name, double v) {
    if (name == "sin") return std::sin(v);
    if (name == "cos") return std::cos(v);
    if (name == "tan") return std::tan(v);
    if (name == "sinh") return std::sinh(v);
    if (name == "cosh") return std::cosh(v);
    if (name == "exp") return std::exp(v);
    if (name == "log") {
        if (v <= 0.0) throw DomainError("log requires a positive argument");
        return std::log(v);
    }
    if (name == "sqrt") {
        if (v < 0.0) throw DomainError("sqrt requires a non-negative argument");
        return std::sqrt(v);
    }
    if (name == "neg") return -v;
    throw UnknownIdentifier(name);
}

}  // namespace

double eval_value(const Expr& e, const std::map<std::string, double>& env) {
    switch (e.kind) {
        case ExprKind::Number:
            return e.number;
        case ExprKind::Ident: {
            auto it = env.find(e.name);
            if (it == env.end()) throw UnknownIdentifier(e.name);
            return it->second;
        }
        case ExprKind::Unary:
            return -eval_value(*e.lhs, env);
        case ExprKind::Binary: {
            double a = eval_value(*e.lhs, env);
            double b = eval_value(*e.rhs, env);
            switch (e.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) throw DomainError("division by zero");
                    return a / b;
                case '^':
                    if (b == std::rint(b) && std::abs(b) <= 1e15) {
                        if (a == 0.0 && b < 0.0)
                            throw DomainError("zero base with negative power");
                        return scalar_ipow(a, static_cast<long long>(b));
                    }
                    if (a <= 0.0) throw DomainError("non-integer power requires a positive base");
                    return std::pow(a, b);
            }
            throw DomainError("unsupported operator");
        }
        case ExprKind::Call:
            return scalar_function(e.name, eval_value(*e.lhs, env));
    }
    throw DomainError("unreachable expression kind");
}

}  // namespace kahler4
