#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptroots/modarith.hpp"

namespace ptroots {

struct PolyParseError : Error {
  std::size_t position;
  PolyParseError(const std::string& what, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + what),
        position(pos) {}
};

// Dense coefficient list, constant term first, from either form of input:
// a comma-separated list of signed decimal integers ("1,0,-3"), or a
// symbolic expression in x ("x^3+2*x-7": integer coefficients, ^ powers,
// + and - between terms, optional *). Coefficients come back as written;
// reduction happens at counting time. Exponents are capped at 10^6.
std::vector<mpz_class> parse_poly_text(const std::string& text);

}  // namespace ptroots
