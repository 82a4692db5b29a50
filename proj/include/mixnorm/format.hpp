#pragma once

#include <string>

namespace mixnorm {

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

// General-format rendering with the given number of significant digits.
std::string format_double_sig(double x, int significant);

}  // namespace mixnorm
