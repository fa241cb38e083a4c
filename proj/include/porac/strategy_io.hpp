#pragma once

// Text form of a deterministic classical strategy:
//
//   d=3
//   encode: 0 0 0 1 1 1 2 2 2
//   decode1: 0 1 2
//   decode2: 0 0 0
//
// `encode` lists the symbol of each string in index order 00, 01, ...;
// `decodeY` lists the guess for x_Y per symbol 0, 1, ...

#include <string>
#include <string_view>

#include "porac/game.hpp"

namespace porac {

std::string strategy_to_text(const ClassicalStrategy& s);
/// Throws std::invalid_argument on malformed input.
ClassicalStrategy strategy_from_text(std::string_view text);

}  // namespace porac
