#pragma once

// Coefficient expression language.
//
//   expr    := term   { ('+' | '-') term }
//   term    := unary  { ('*' | '/') unary }
//   unary   := '-' unary | power
//   power   := primary [ '^' unary ]          (right-associative)
//   primary := number | name | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt | abs
//
// '^' binds tighter than unary minus: "-2^2" is -(2^2) = -4 and
// "s^-1" is s^(-1). There is no implicit multiplication ("2s" is an error).
// The names s and t are the two coefficient arguments; any other name is a
// parameter that must be bound at evaluation time.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace blowup::expr {

using ParamBinding = std::map<std::string, double, std::less<>>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Exp, Log, Sqrt, Abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct Name {
  std::string id;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Func func;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Name, Negate, Binary, Call> v;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected);
  /// Byte offset of the offending token in the source.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownFunctionError : public ParseError {
public:
  using ParseError::ParseError;
};

/// Evaluation failed: an unbound parameter, or a domain violation such as
/// log of a non-positive number, division by zero, 0 to a negative power or
/// a non-integer power of a negative base. `subexpression` is the printed
/// form of the offending node.
class EvalError : public std::runtime_error {
public:
  EvalError(const std::string& what, std::string subexpression);
  const std::string& subexpression() const { return subexpression_; }

private:
  std::string subexpression_;
};

class UnboundParameterError : public EvalError {
public:
  using EvalError::EvalError;
};

/// Parsed, immutable coefficient expression A(s, t) or B(s, t).
class CoeffExpr {
public:
  CoeffExpr() = default;
  explicit CoeffExpr(NodePtr root) : root_(std::move(root)) {}

  const NodePtr& root() const { return root_; }

  /// Fully parenthesised text that reparses to the same tree.
  std::string print() const;

  /// Names other than s and t.
  std::set<std::string> parameters() const;

  bool mentions(std::string_view name) const;

  friend bool operator==(const CoeffExpr& a, const CoeffExpr& b);

private:
  NodePtr root_;
};

CoeffExpr parse(std::string_view source);

std::string print(const Node& node);
bool structurally_equal(const Node& a, const Node& b);

/// IEEE double evaluation. Overflow yields +-inf (not an error); domain
/// violations and NaN results throw EvalError.
double eval(const CoeffExpr& expr, double s, double t, const ParamBinding& params);

struct Range {
  double lo;
  double hi;
};

/// First grid point where the expression is not strictly positive and finite.
struct Counterexample {
  double s;
  double t;
  std::string reason;
};

/// Evaluates on an n x n log-spaced grid over s_range x t_range (ranges must
/// be positive, n >= 2). Advisory only: a clean scan does not prove
/// positivity between grid points.
std::optional<Counterexample> positivity_scan(const CoeffExpr& expr, const ParamBinding& params,
                                              Range s_range, Range t_range, int n);

} // namespace blowup::expr
