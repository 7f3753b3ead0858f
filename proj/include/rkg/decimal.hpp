#pragma once

#include <string>

#include "rkg/exact.hpp"

namespace rkg {

/// Renders an exact rational with `digits` significant digits, rounding the
/// exact value half-to-even. Layout follows printf's %g: fixed notation for
/// decimal exponents in [-4, digits), scientific otherwise, trailing zeros
/// stripped.
std::string to_decimal(const Rational& value, int digits = 12);

/// %.12g rendering of a double, used for Monte Carlo estimates.
std::string format_double(double value);

}  // namespace rkg
