#include "olsig/factorize.hpp"

#include "olsig/error.hpp"

namespace olsig {

IndexVector tame_factor(const Matrix& g, const LogSignature& ls, DecodeStats* stats) {
  if (!ls.decoder) throw Error(ErrorCode::Unsupported, "signature has no tame decoder");
  if (ls.group.family != Family::GL) {
    const QuadraticSpace V = space_for(ls.group);
    bool member = in_group(V, ls.group, g);
    if (!member && ls.group.projective()) member = in_group(V, ls.group, -g);
    if (!member) throw Error(ErrorCode::NotInGroup, "element is not in " + ls.group.name());
  } else if (!in_group(QuadraticSpace{}, ls.group, g)) {
    throw Error(ErrorCode::NotInGroup, "element is not in " + ls.group.name());
  }
  IndexVector iv = ls.decoder->decode(g, stats);
  if (stats) ++stats->products;
  if (ls.element_key(ls.product(iv)) != ls.element_key(g))
    throw Error(ErrorCode::ConstructionMismatch, "decoded indices do not recompose to the element");
  return iv;
}

std::uint64_t rank(const IndexVector& iv, const LogSignature& ls) {
  if (iv.size() != ls.blocks.size()) throw Error(ErrorCode::InvalidArgument, "index vector length");
  std::uint64_t r = 0, M = 1;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (iv[i] >= ls.blocks[i].size()) throw Error(ErrorCode::InvalidArgument, "index out of range in block " + std::to_string(i));
    r += iv[i] * M;
    M *= ls.blocks[i].size();
  }
  return r;
}

IndexVector unrank(std::uint64_t n, const LogSignature& ls) {
  std::uint64_t total = 1;
  for (const auto& b : ls.blocks) total *= b.size();
  if (n >= total) throw Error(ErrorCode::InvalidArgument, std::to_string(n) + " is outside [0, " + std::to_string(total) + ")");
  IndexVector iv;
  iv.reserve(ls.blocks.size());
  for (const auto& b : ls.blocks) {
    iv.push_back(static_cast<std::uint32_t>(n % b.size()));
    n /= b.size();
  }
  return iv;
}

nlohmann::json to_json(const IndexVector& iv) { return nlohmann::json(std::vector<std::uint32_t>(iv)); }

}  // namespace olsig
