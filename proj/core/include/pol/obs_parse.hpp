#pragma once

#include <string_view>

#include "pol/obs_expr.hpp"

namespace pol {

/// Parses the observation-expression syntax:
///
///   expr   := term ('+' term)*
///   term   := factor (';' factor)*
///   factor := primary ('*' | '^' N)*
///   primary:= '0' | '1' | TOKEN ('@' TOKEN)? | '(' expr ')'
///
/// The tree is returned as written (not canonicalized). Throws ParseError with
/// the byte offset of the offending character.
ObsExpr parse_obs(std::string_view text);

/// As above, additionally rejecting atoms outside `alphabet` (UnknownSymbol).
ObsExpr parse_obs(std::string_view text, const Alphabet& alphabet);

}  // namespace pol
