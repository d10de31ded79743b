#pragma once

// Recursive-descent parser and dimension-checked evaluator for expressions
// over the constants registry, e.g. "c^7/(2*G^2*hbar)" or
// "2*G*5.972e24 [kg]/(6.371e6 [m]*c^2)".
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | factor
//   factor := base ('^' unary)?            right-associative
//   base   := NUMBER unit? | IDENT | IDENT '(' expr ')' | '(' expr ')'
//   unit   := '[' uexpr ']'
//   uexpr  := uterm (('*'|'/') uterm)*
//   uterm  := uatom ('^' uexp)?
//   uatom  := m | kg | s | A | K | mol | cd | eV | '1' | '(' uexpr ')'
//   uexp   := '-'? INT | '(' '-'? INT ('/' INT)? ')'
//
// The operand of '^' must fold to a dimensionless rational at parse time.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tunclock/constants.hpp"
#include "tunclock/error.hpp"
#include "tunclock/units.hpp"

namespace tunclock::dimparse {

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::string expected_;
  std::string found_;
};

/// A bracketed unit annotation resolved to an SI scale factor.
struct Unit {
  std::string text;  // whitespace-free source form, reprinted verbatim
  double scale = 1.0;
  units::DimensionVector dim;
};

/// Parses a bare unit expression such as "kg*m^2*s^-2" or "eV".
Unit parse_unit(std::string_view text);

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sqrt, exp, ln, abs };

struct Node;
using NodePtr = std::unique_ptr<const Node>;

struct Number {
  double value = 0.0;
  std::optional<Unit> unit;
};

struct Const {
  std::string name;
};

struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
  units::Rational exponent;  // folded rhs, meaningful only for BinaryOp::pow
};

struct Call {
  Function fn;
  NodePtr arg;
};

struct Negate {
  NodePtr arg;
};

struct Node {
  Span span;
  std::size_t depth = 1;
  std::variant<Number, Const, Binary, Call, Negate> kind;
};

struct ParseOptions {
  std::size_t max_depth = 64;
};

/// Total over arbitrary input: returns a tree or throws ParseError.
NodePtr parse(std::string_view input, const ParseOptions& options = {});

/// Fully parenthesised text that parses back to a structurally equal tree.
std::string print(const Node& node);

/// Compares shape, operators, names, numeric values and units; spans are ignored.
bool structurally_equal(const Node& a, const Node& b);

units::Quantity evaluate(const Node& node, const ConstantsRegistry& registry);

/// Dimension-only fold; never looks at magnitudes.
units::DimensionVector fold_dimension(const Node& node, const ConstantsRegistry& registry);

struct DimensionReport {
  bool pass = false;
  units::DimensionVector computed;
  units::DimensionVector expected;
};

DimensionReport check_dimension(const Node& node, const units::DimensionVector& expected,
                                const ConstantsRegistry& registry);

// --- batch audit -----------------------------------------------------------

/// One line of a `check-eq` report.
struct AuditRow {
  std::string expression;
  std::optional<double> value;
  std::string si_dimension;
  std::string status;  // "ok", "dimension-mismatch", or an error status name
  std::string error;
};

/// Processes an expression file. Each non-blank line not starting with '#'
/// is one of
///   let NAME = EXPR            bind NAME for the following lines
///   EXPR                       evaluate
///   EXPR => UNIT               evaluate and require the given SI dimension
/// Every processed line yields one row.
std::vector<AuditRow> audit(std::istream& in, const ConstantsRegistry& registry);

bool audit_passed(const std::vector<AuditRow>& rows);

}  // namespace tunclock::dimparse
