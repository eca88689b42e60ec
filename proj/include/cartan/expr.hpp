/// @file expr.hpp
/// @brief Restricted arithmetic expression grammar over chart coordinates.
///
/// Supported: numbers, coordinate names, + - * / ^ (constant exponent),
/// parentheses, exp, log, sin, cos, sqrt, pow(f, c). Parsing produces an
/// analytic ScalarField.

#pragma once

#include <string>

#include "cartan/field.hpp"

namespace cartan {

/// Parse `src` against the chart's coordinate names. Throws Error with a
/// position diagnostic on malformed input.
ScalarField parse_expression(const std::string& src, const Chart& chart);

}  // namespace cartan
