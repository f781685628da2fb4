#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmo/common.hpp"

namespace xmo {

/// Parse failure with the byte offset where it happened.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& message, std::size_t position, std::vector<std::string> expected = {});
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Node of an expression tree. Trees are immutable and shared.
struct ExprNode {
  enum class Kind { Number, Constant, Variable, Negate, Add, Sub, Mul, Div, Call };

  Kind kind = Kind::Number;
  double value = 0.0;       // Number and Constant
  int variable = 0;         // Variable: 1-based coordinate index
  std::string name;         // Constant name ("pi", "e") or function name
  std::vector<std::shared_ptr<const ExprNode>> args;

  bool operator==(const ExprNode& other) const;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

/// An analytic real-valued function on R^n given as an expression tree.
///
/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := NUMBER | VAR | CONST | FUNC '(' expr (',' expr)* ')' | '(' expr ')' | '-' factor
///   VAR    := 'x' DIGIT+          CONST := 'pi' | 'e'
///   FUNC   := sin cos exp log abs sqrt sign (one argument), pow min max (two),
///             piecewise(t, r, inner, outer) = inner if |t| < r else outer.
///
/// Evaluation throws DomainError instead of producing NaN or infinity.
class FunctionSpec {
 public:
  FunctionSpec(ExprPtr root, int dim);

  const ExprNode& root() const { return *root_; }
  const ExprPtr& root_ptr() const { return root_; }
  /// Largest coordinate index used, or the declared dimension if larger.
  int dim() const { return dim_; }

  double evaluate(std::span<const double> x) const;
  /// Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

  bool operator==(const FunctionSpec& other) const { return dim_ == other.dim_ && *root_ == *other.root_; }

 private:
  ExprPtr root_;
  int dim_;
};

/// Parses `text`. The dimension is the largest variable index (at least `min_dim`).
FunctionSpec parse_function(std::string_view text, int min_dim = 1);

/// Evaluates a numeric literal such as "2pi", "-pi/2", "1e-3" or "e^..."-free
/// constant expressions. A number immediately followed by `pi` or `e`
/// multiplies them.
double parse_number(std::string_view text);

}  // namespace xmo
