#pragma once

// Concrete ASCII syntax for processes.
//
//   P ::= "0" | "(new" NAME ")" P | "!" P | P "|" P | "(" P ")"
//       | INT ":" B "." P | INT ":" NAME "!" T "." P
//       | INT ":" "case" XVAR "of" "some(" YVAR ")" ":" P "else" P "end"
//   B ::= NAME "?" XVAR | "&" ("forall"|"exists") "(" B ("," B)* ")"
//   T ::= NAME | YVAR
//
// "|" is the loosest operator and associates to the left; prefixes take a
// single non-parallel continuation. `//` starts a line comment. A payload
// identifier is a term variable when an enclosing case binds it.

#include <string>
#include <string_view>

#include "ast.hpp"
#include "error.hpp"

namespace qprot {

// Parses and validates; throws ParseError on syntax errors and Error
// (ErrorKind::Validation) when the parsed process is not well formed.
ProcessPtr parse_process(std::string_view text);

// Parses without running validate().
ProcessPtr parse_process_unchecked(std::string_view text);

std::string pretty(const Process& p);
std::string pretty(const Binder& b);

}  // namespace qprot
