#pragma once

#include <string>

#include "mixid/word.hpp"

namespace mixid {

// Word expression grammar:
//   word := term ("*" term)*
//   term := atom ("^" (integer | atom))?
//   atom := VAR | CONST | "[" word "," word "]" | "(" word ")"
// VAR is x, y, z or x1..x9; any other identifier is a constant name.
// a^n is the n-fold power, a^b is b^-1*a*b, [a,b] is a*b*a^-1*b^-1.
// Throws ParseError with a position on malformed input.
Word parse_word(const std::string& text);

}  // namespace mixid
