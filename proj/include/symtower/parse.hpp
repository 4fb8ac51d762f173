#pragma once

// Expression language shared by the CLI and the rewrite traces.
//
//   element = factor {"*" factor}
//   factor  = ident ["^" sint] | "1" | "-1"
//   symbol  = "(" element {"," element} ")"
//   expr    = [sint "*"] symbol {("+"|"-") [sint "*"] symbol}
//
// The empty sum serializes as "0" and is accepted back by parse_symbol_expr.

#include <string>
#include <string_view>

#include "symtower/symcalc.hpp"

namespace symtower {

ElementClass parse_element(std::string_view text, const TowerPtr& tower);
SymbolSum parse_symbol_expr(std::string_view text, const TowerPtr& tower);

std::string serialize(const ElementClass& cls);
std::string serialize(const SymbolSum& sum);

}  // namespace symtower
