#pragma once

#include <memory>
#include <string>
#include <vector>

#include "trilin/errors.hpp"
#include "trilin/linalg.hpp"

namespace trilin {

/// Character range [begin, end) into the original source text.
struct SourceSpan {
    int begin = 0;
    int end = 0;
};

/// Parse or evaluation failure with a source location.
class ExpressionError : public Error {
public:
    ExpressionError(const std::string& msg, SourceSpan span)
        : Error(msg), span(span) {}
    SourceSpan span;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class FuncKind { Sin, Cos, Exp, Tanh, Cosh, Sinh, Abs, Pow };

/// Expression tree over literals, the time variable t, state variables
/// x1..xn, arithmetic, unary minus, and a fixed function set.
class ExpressionAst {
public:
    enum class Kind { Literal, TimeVar, StateVar, Unary, Binary, Call };

    Kind kind;
    SourceSpan span;

    double literal = 0.0;                  // Kind::Literal
    int state_index = 0;                   // Kind::StateVar, 0-based
    BinaryOp bin_op = BinaryOp::Add;       // Kind::Binary
    FuncKind func = FuncKind::Sin;         // Kind::Call
    std::vector<std::unique_ptr<ExpressionAst>> children;

    double evaluate(double t, const Vec& x) const;
    double evaluate(double t) const;  // no state variables allowed

    /// Largest state-variable index referenced (0 if none).
    int max_state_index() const;

    bool equals(const ExpressionAst& other) const;
    std::string pretty_print() const;

    std::unique_ptr<ExpressionAst> clone() const;
};

using ExprPtr = std::unique_ptr<ExpressionAst>;

/// Parses `text` with precedence unary-minus > ^ > * / > + -, all binary
/// operators left associative. Throws ExpressionError with a source span
/// on syntax errors, unknown identifiers, or arity mismatches.
ExprPtr parse_expression(const std::string& text);

/// Computes line and column (1-based) of an offset for error reporting.
std::pair<int, int> line_col_of(const std::string& text, int offset);

}  // namespace trilin
