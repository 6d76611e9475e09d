#include "olsig/pgm.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "decoders.hpp"
#include "olsig/error.hpp"
#include "olsig/factorize.hpp"

namespace olsig {

PgmKey keygen(const GroupDescriptor& desc, std::uint64_t seed, const KeygenOptions& opt) {
  PgmKey key;
  key.seed = seed;
  key.fix_identity = opt.fix_identity;
  key.alpha_ls = canonical_ls(desc);
  const LogSignature& a = key.alpha_ls;
  if (!a.decoder) throw Error(ErrorCode::Unsupported, "alpha has no tame decoder");
  const std::size_t k = a.blocks.size();

  std::mt19937_64 rng(seed);
  std::vector<Matrix> t(k, Matrix::identity(field_for(desc.q), desc.n));  // t[i] on the right of block i
  if (!opt.fix_identity && k > 1) {
    const QuadraticSpace V = space_for(desc);
    RandomElements walk(V, desc.projective() ? desc.lift_family() : desc.family, rng());
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const int steps = 1 + static_cast<int>(rng() % 8);
      for (int s = 0; s < steps; ++s) walk.next();
      t[i] = walk.next();
    }
  }

  key.beta_ls = a;
  key.beta_ls.segments.clear();
  key.beta_ls.notes = {"alpha blocks shuffled and translated, seed " + std::to_string(seed)};
  key.perm.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto sz = static_cast<std::uint32_t>(a.blocks[i].size());
    std::vector<std::uint32_t> order(sz);  // order[j] = alpha index placed at beta position j
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin() + (opt.fix_identity ? 1 : 0), order.end(), rng);
    key.perm[i].assign(sz, 0);
    const Matrix left = i ? t[i - 1].inverse() : t.back();  // t.back() stays the identity
    Block b(sz);
    for (std::uint32_t j = 0; j < sz; ++j) {
      key.perm[i][order[j]] = j;
      b[j] = left * a.blocks[i][order[j]] * t[i];
    }
    key.beta_ls.blocks[i] = std::move(b);
  }
  key.beta_ls.decoder = std::make_shared<detail::PermutedDecoder>(a.decoder, key.perm);

  for (const auto* ls : {&key.alpha_ls, &key.beta_ls}) {
    VerifyOptions vo;
    vo.exhaustive = ls->claimed_order <= opt.verify_budget;
    vo.budget = opt.verify_budget;
    vo.samples = opt.verify_samples;
    vo.seed = seed;
    const VerifyReport r = verify_ls(*ls, vo);
    if (!r.valid)
      throw Error(ErrorCode::ConstructionMismatch,
                  std::string(ls == &key.alpha_ls ? "alpha" : "beta") + " failed verification: " + r.witness);
  }
  return key;
}

std::uint64_t encrypt(const PgmKey& key, std::uint64_t msg) {
  const Matrix g = key.alpha_ls.product(unrank(msg, key.alpha_ls));
  return rank(key.beta_ls.decoder->decode(g), key.beta_ls);
}

std::uint64_t decrypt(const PgmKey& key, std::uint64_t ct) {
  const Matrix g = key.beta_ls.product(unrank(ct, key.beta_ls));
  return rank(key.alpha_ls.decoder->decode(g), key.alpha_ls);
}

nlohmann::json to_json(const PgmKey& key) {
  return {{"seed", key.seed},
          {"fix_identity", key.fix_identity},
          {"alpha", to_json(key.alpha_ls)},
          {"beta", to_json(key.beta_ls)},
          {"perm", key.perm}};
}

PgmKey pgm_key_from_json(const nlohmann::json& j) {
  GroupDescriptor desc;
  std::uint64_t seed = 0;
  KeygenOptions opt;
  try {
    desc = descriptor_from_json(j.at("alpha").at("group"));
    seed = j.at("seed").get<std::uint64_t>();
    opt.fix_identity = j.value("fix_identity", false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, std::string("key file: ") + e.what());
  }
  PgmKey key = keygen(desc, seed, opt);
  const LogSignature a = ls_from_json(j.at("alpha")), b = ls_from_json(j.at("beta"));
  if (a.blocks != key.alpha_ls.blocks || b.blocks != key.beta_ls.blocks)
    throw Error(ErrorCode::Format, "key file blocks differ from the blocks its seed generates");
  return key;
}

}  // namespace olsig
