#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polyq/polynomial.hpp"

namespace polyq {

/// Byte range [begin, end) into the original source text.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

enum class ExprKind { Number, Variable, Neg, Add, Sub, Mul, Pow };

/// Expression AST. Precedence, tightest first: unary minus, '^'
/// (right-associative, exponent must be a non-negative integer literal),
/// '*', then '+'/'-' (left-associative).
struct ExprNode {
    ExprKind kind = ExprKind::Number;
    SourceSpan span;
    double number = 0.0;             // Number
    std::string name;                // Variable
    int exponent = 0;                // Pow; children[0] is the base
    std::vector<ExprNode> children;  // Neg: 1, Add/Sub/Mul: 2, Pow: 1

    std::vector<std::string> variables() const;
};

using ExprAst = ExprNode;

/// Parses an objective expression. Grammar: identifiers
/// [A-Za-z][A-Za-z0-9_]*, decimal literals with optional fraction,
/// operators + - * ^ and parentheses. Division and every other operator
/// are rejected with an "unsupported operator" ParseError carrying the
/// offending span.
ExprAst parse(std::string_view source);

/// Expands the AST into a canonical ContinuousPoly.
ContinuousPoly lower(const ExprAst& ast);

/// Direct recursive numeric evaluation, independent of lower(). Used as the
/// oracle for parser round-trip checks.
double evaluate_ast(const ExprAst& ast, const std::map<std::string, double>& assignment);

} // namespace polyq
