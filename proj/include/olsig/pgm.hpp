#pragma once

#include <cstdint>
#include <vector>

#include "olsig/lscore.hpp"

namespace olsig {

struct PgmKey {
  LogSignature alpha_ls, beta_ls;
  std::uint64_t seed = 0;
  bool fix_identity = false;
  // perm[i][j]: position in beta block i of alpha block i's element j
  std::vector<std::vector<std::uint32_t>> perm;
};

struct KeygenOptions {
  /// Shuffle only positions >= 1 and skip translations, so 0 encrypts to 0.
  bool fix_identity = false;
  std::uint64_t verify_budget = 2000;  // exhaustive re-verification up to this order
  std::uint64_t verify_samples = 2000;
};

/// alpha = canonical_ls(desc); beta = alpha with seeded in-block shuffles and the
/// translations beta_i = t_{i-1}^-1 alpha_i t_i (t_{-1} = t_last = 1). Both are
/// re-verified; throws ConstructionMismatch if either fails.
PgmKey keygen(const GroupDescriptor& desc, std::uint64_t seed, const KeygenOptions& opt = {});

/// rank_beta(tame_factor_beta(product_alpha(unrank_alpha(msg))))
std::uint64_t encrypt(const PgmKey& key, std::uint64_t msg);
std::uint64_t decrypt(const PgmKey& key, std::uint64_t ct);

nlohmann::json to_json(const PgmKey& key);
/// Regenerates the key from the stored descriptor and seed and checks the stored blocks.
PgmKey pgm_key_from_json(const nlohmann::json& j);

}  // namespace olsig
