#pragma once

#include <cstdint>

#include "olsig/lscore.hpp"

namespace olsig {

/// Indices of g through a tame LS. Checks membership first and that the
/// recomposed product equals g; throws NotInGroup or ConstructionMismatch.
IndexVector tame_factor(const Matrix& g, const LogSignature& ls, DecodeStats* stats = nullptr);

/// Mixed-radix position of iv over the block sizes, first block least significant.
std::uint64_t rank(const IndexVector& iv, const LogSignature& ls);
IndexVector unrank(std::uint64_t n, const LogSignature& ls);

nlohmann::json to_json(const IndexVector& iv);

}  // namespace olsig
