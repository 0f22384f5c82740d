#ifndef JETCAL_PARSE_HPP
#define JETCAL_PARSE_HPP

#include <string>

#include "jetcal/poly.hpp"

namespace jetcal {

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

/// Parse a polynomial literal: integer or rational coefficients
/// (`3`, `-7/2`), variables x1..xd, operators + - * ^ and parentheses;
/// whitespace is insignificant. Exponents are bare nonnegative integers.
Poly parse_poly(const std::string& text, std::uint32_t d, ScalarField f);

} // namespace jetcal

#endif
