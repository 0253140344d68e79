#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "pcfh/term.hpp"

namespace pcfh {

// Byte range into the input text; start <= end.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, SourceSpan span)
      : std::runtime_error(std::move(msg)), span(span) {}
  SourceSpan span;
};

// Concrete syntax:
//   term   := `\` ident `.` term | appSeq
//   appSeq := atom+                          (left-associative)
//   atom   := ident | `0` | decimal | `S` atom
//           | `ifz` `(` term `;` term `;` ident `.` term `)`
//           | `fix` ident `.` term | `(` term `)`
// `#` starts a line comment; whitespace is insignificant; decimal
// literals desugar to numerals. `S`, `ifz`, `fix` are reserved.
TermPtr parseTerm(const std::string& text);

// Inverse of parseTerm up to alpha: parseTerm(printTerm(t)) ≡α t.
std::string printTerm(const TermPtr& t);

}  // namespace pcfh
