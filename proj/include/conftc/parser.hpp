#pragma once

#include "conftc/ring.hpp"
#include "conftc/tensor.hpp"

#include <memory>
#include <stdexcept>
#include <variant>

namespace conftc {

/// Syntax or index-validation failure, with 1-based source position.
struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line, int col);
};

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

/// Generator atom `A[i,j]`, optionally slotted `A[i,j]@l` (slot 0 = none).
struct AtomNode {
    int i = 0;
    int j = 0;
    int slot = 0;
    int line = 0;
    int col = 0;
};

/// Atom, or parenthesized subexpression raised to a nonnegative power.
struct FactorNode {
    std::variant<AtomNode, ExprPtr> base;
    int power = 1;
};

/// Signed product `[int *]? factor (* factor)*`; a bare integer has no factors.
struct TermNode {
    int sign = 1;
    std::optional<Int> coeff;
    std::vector<FactorNode> factors;
};

struct ExprNode {
    std::vector<TermNode> terms;
};

/// Grammar (whitespace insensitive):
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := int | [int '*']? factor ('*' factor)*
///   factor := atom | '(' expr ')' ['^' int]
///   atom   := 'A[' int ',' int ']' ['@' int]
/// The optional leading '-' and the bare-integer term make every string the
/// canonical printers emit parse back (round-trip identity).
ExprPtr parse(const std::string& text);

/// Evaluates in the single ring; slotted atoms are rejected.
Element evaluate_ring(const RingSpec& spec, const ExprNode& ast);

/// Evaluates in the s-fold tensor power; every atom needs a slot in 1..s.
TensorElement evaluate_tensor(const RingSpec& spec, int s, const ExprNode& ast);

}  // namespace conftc
