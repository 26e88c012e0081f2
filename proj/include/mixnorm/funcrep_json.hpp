#pragma once

#include <string>

#include "mixnorm/funcrep.hpp"
#include "mixnorm/operators.hpp"

namespace mixnorm {

// Parses a function spec. Accepts JSON text or the shortcut "constant-indicator"
// (the indicator of |x| <= 1, |y| <= 1). Throws Error(SpecParse) on bad input.
FuncRep func_from_json(const std::string& text);
Func1D func1d_from_json(const std::string& text);
std::string func_to_json(const FuncRep& f);

OperatorSpec operator_from_json(const std::string& text);

}  // namespace mixnorm
