#pragma once

#include <map>
#include <string>

#include "ksmap/multipoly.hpp"

namespace ksmap {

/// Identifier -> variable slot. x is always available.
using SymbolTable = std::map<std::string, int>;

/// x plus the given parameter names in slots t1, t2.
SymbolTable make_symbols(const std::vector<std::string>& params);

/// Parses integers, identifiers, + - * ^, parentheses and unary minus.
/// Division is accepted only by nonzero constants. Errors are InputError
/// with "line L, column C: ..." prefixes; line_offset shifts reported lines.
MultiPoly parse_polynomial(const std::string& src, const SymbolTable& symbols = make_symbols({"t1", "t2"}),
                           int line_offset = 0, int column_offset = 0);

}  // namespace ksmap
