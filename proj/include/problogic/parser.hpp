#ifndef PROBLOGIC_PARSER_HPP
#define PROBLOGIC_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "problogic/formula.hpp"

namespace problogic {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}
  /// 1-based character position of the offending input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the concrete syntax:
///   formula := iff ; iff := imp ("<->" imp)* ; imp := disj ("->" disj)* ;
///   disj := conj ("|" conj)* ; conj := unary ("&" unary)* ;
///   unary := "!" unary | "L[" rat "]" unary | "M[" rat "]" unary | atom ;
///   atom := ident | "true" | "false" | "(" formula ")" ;
///   rat := int | int "/" int          (value in [0,1])
/// "->" and "<->" are desugared; they never appear in the AST.
Formula parse(std::string_view text);

/// Theory file: one formula per line, '#' starts a comment, blank lines
/// are ignored.
std::vector<Formula> parse_theory(std::string_view text);

}  // namespace problogic

#endif
