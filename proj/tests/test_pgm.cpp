#include <set>

#include "doctest.h"
#include "olsig/error.hpp"
#include "olsig/factorize.hpp"
#include "olsig/pgm.hpp"

using namespace olsig;

TEST_CASE("key generation is deterministic") {
  const auto d = parse_descriptor("O-", 3, 2);
  const auto a = keygen(d, 11), b = keygen(d, 11);
  CHECK(a.beta_ls.blocks == b.beta_ls.blocks);
  CHECK(a.perm == b.perm);
  for (std::uint64_t m = 0; m < 50; ++m) CHECK(encrypt(a, m) == encrypt(b, m));

  std::set<std::string> betas;
  for (std::uint64_t seed = 0; seed < 10; ++seed) betas.insert(to_json(keygen(d, seed).beta_ls).dump());
  CHECK(betas.size() == 10);
}

TEST_CASE("beta is a valid LS") {
  const auto k = keygen(parse_descriptor("O-", 3, 1), 3);
  const auto r = verify_ls(k.beta_ls);
  CHECK(r.valid);
  CHECK(r.mode == "exhaustive");
  CHECK(k.beta_ls.blocks != k.alpha_ls.blocks);
}

TEST_CASE("decrypt inverts encrypt") {
  const auto k = keygen(parse_descriptor("O-", 3, 1), 5);
  for (std::uint64_t m = 0; m < 8; ++m) CHECK(decrypt(k, encrypt(k, m)) == m);
  CHECK_THROWS_AS(encrypt(k, 8), Error);
}

TEST_CASE("encrypt permutes Z_1440") {
  const auto k = keygen(parse_descriptor("O-", 3, 2), 42);
  std::set<std::uint64_t> img;
  std::uint64_t moved = 0;
  for (std::uint64_t m = 0; m < 1440; ++m) {
    const auto c = encrypt(k, m);
    img.insert(c);
    moved += c != m;
    CHECK(decrypt(k, c) == m);
  }
  CHECK(img.size() == 1440);
  CHECK(*img.rbegin() == 1439);
  CHECK(moved > 1000);
}

TEST_CASE("identity-preserving key fixes 0") {
  KeygenOptions o;
  o.fix_identity = true;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto k = keygen(parse_descriptor("SO+", 3, 2), seed, o);
    CHECK(encrypt(k, 0) == 0);
    CHECK(decrypt(k, 0) == 0);
  }
}

TEST_CASE("projective and larger groups") {
  const auto k = keygen(parse_descriptor("PSO-", 3, 2), 9);
  for (std::uint64_t m = 0; m < k.alpha_ls.claimed_order; ++m) CHECK(decrypt(k, encrypt(k, m)) == m);
  const auto big = keygen(parse_descriptor("Oodd", 3, 2), 9);  // sampled re-verification
  for (std::uint64_t m = 0; m < 300; ++m) CHECK(decrypt(big, encrypt(big, m * 331)) == m * 331);
}

TEST_CASE("key files") {
  const auto k = keygen(parse_descriptor("O+", 3, 2), 77);
  const auto j = to_json(k);
  const auto back = pgm_key_from_json(j);
  CHECK(encrypt(back, 123) == encrypt(k, 123));
  auto bad = j;
  bad["seed"] = 78;
  CHECK_THROWS_AS(pgm_key_from_json(bad), Error);
}
