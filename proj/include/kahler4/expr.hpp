#pragma once

#include <map>
#include <memory>
#include <string>

namespace kahler4 {

enum class ExprKind { Number, Ident, Unary, Binary, Call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    double number = 0.0;   // Number
    std::string name;      // Ident or Call function name
    char op = 0;           // Binary: one of + - * / ^ ; Unary is always -
    ExprPtr lhs, rhs;      // Binary children; Unary and Call use lhs only
};

ExprPtr make_number(double v);
ExprPtr make_ident(std::string name);
ExprPtr make_unary(ExprPtr operand);
ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(std::string func, ExprPtr arg);

bool is_known_function(const std::string& name);

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | ident | func '(' expr ')' | '(' expr ')'
// '^' is right-associative and binds tighter than unary minus.
// Throws SyntaxError with the byte offset of the defect, and
// UnknownIdentifier for a call to an unrecognized function name.
ExprPtr parse(const std::string& src);

// Minimal-parenthesis rendering: parse(print(e)) reproduces e exactly,
// including bitwise-identical numeric literals.
std::string print(const Expr& e);
std::string print(const ExprPtr& e);

bool expr_equal(const Expr& a, const Expr& b);

// Plain scalar evaluation; identifiers resolve through env or throw
// UnknownIdentifier. DomainError on log/sqrt/pow domain violations and
// division by zero.
double eval_value(const Expr& e, const std::map<std::string, double>& env);

}  // namespace kahler4
