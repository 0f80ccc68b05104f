#ifndef RELIDENT_ALGEBRA_PARSE_HPP
#define RELIDENT_ALGEBRA_PARSE_HPP

#include "relident/algebra/poly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace relident {

/// Syntax error with a 1-based position inside the parsed text.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          message_(message), line_(line), column_(column) {}
    const std::string& message() const { return message_; }
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    std::string message_;
    int line_;
    int column_;
};

/// Quotient of two polynomials as written, with exact common factors removed
/// only when one side divides the other.
struct Fraction {
    Poly num;
    Poly den{1};
};

/// Parses an arithmetic expression over identifiers and rationals:
/// + - * / ^ (nonnegative integer exponent), parentheses, unary minus.
/// Identifiers are [A-Za-z_][A-Za-z0-9_]* optionally followed by [digits]
/// (e.g. "y[2]" for a jet variable).
Fraction parse_fraction(std::string_view text);

/// As parse_fraction, but the denominator must be a nonzero constant.
Poly parse_poly(std::string_view text);

}  // namespace relident

#endif
