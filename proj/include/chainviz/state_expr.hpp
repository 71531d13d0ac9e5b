#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chainviz/chain.hpp"
#include "chainviz/fock_state.hpp"

namespace chainviz {

// Grammar (whitespace is insignificant):
//
//   expr    := ['+' | '-'] term (('+' | '-') term)*
//   term    := scalar factor* | factor+
//   factor  := 'a[' int ']' | 'b[' int ']' | 'vac' | '(' expr ')'
//   scalar  := number ['i'] | 'i'
//
// Juxtaposition composes right to left. A term is a state when its last
// factor is a state (`vac` or a parenthesized state); every other factor
// must be an operator. A scalar alone is an operator (a multiple of the
// identity), so "(1 + 2i) a[1] vac" works. The whole expression must be
// a state.

struct StateExpr;

struct Vacuum {
  bool operator==(const Vacuum&) const = default;
};
struct Create {
  int mode;
  bool operator==(const Create&) const = default;
};
struct CreateLocal {
  int site;
  bool operator==(const CreateLocal&) const = default;
};
struct Scalar {
  std::complex<double> value;
  bool operator==(const Scalar&) const = default;
};
struct SignedTerm;
struct Sum {
  std::vector<SignedTerm> terms;
  bool operator==(const Sum&) const;
};
struct Product {
  std::vector<StateExpr> factors;
  bool operator==(const Product&) const;
};

struct StateExpr {
  std::variant<Vacuum, Create, CreateLocal, Scalar, Sum, Product> node;
  bool operator==(const StateExpr&) const = default;
};

struct SignedTerm {
  bool negated = false;
  StateExpr expr;
  bool operator==(const SignedTerm&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  /// 0-based byte offset into the source.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Throws ParseError with the offending source position.
StateExpr parse_state_expr(std::string_view src, int n_sites);

/// Canonical text form; parse(to_string(e)) == e.
std::string to_string(const StateExpr& expr);

/// True when the expression denotes a state rather than an operator.
bool is_state(const StateExpr& expr);

/// Builds the FockState. Throws std::invalid_argument if `expr` is an
/// operator or indices do not fit the basis.
FockState evaluate_state_expr(const StateExpr& expr, const ModeBasis& basis);

}  // namespace chainviz
