#ifndef GL1HOM_CLI_POLY_HPP
#define GL1HOM_CLI_POLY_HPP

#include <string>
#include <string_view>

#include "gl1hom/homology.hpp"

namespace gl1hom::cli {

/// Terms in descending q, then descending t. Within a term the t factor comes
/// first when t > 0 and q < 0, otherwise q first ("tq^-2", "q^2t^-1").
/// The zero polynomial renders as "0".
std::string format_poly(const PoincarePolynomial& p);

/// Inverse of format_poly; accepts the t and q factors in either order and
/// terms in any order (repeated bidegrees add up). Throws Error{PolyParseError}
/// naming the byte offset.
PoincarePolynomial parse_poly(std::string_view text);

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_POLY_HPP
