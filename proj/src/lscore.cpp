#include "olsig/lscore.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_set>

#include "decoders.hpp"
#include "olsig/error.hpp"

namespace olsig {

std::uint64_t LogSignature::length() const {
  std::uint64_t l = 0;
  for (const auto& b : blocks) l += b.size();
  return l;
}

std::vector<std::uint64_t> LogSignature::block_sizes() const {
  std::vector<std::uint64_t> s;
  for (const auto& b : blocks) s.push_back(b.size());
  return s;
}

Matrix LogSignature::product(const IndexVector& iv) const {
  if (iv.size() != blocks.size()) throw Error(ErrorCode::DimensionMismatch, "index vector length");
  Matrix g;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (iv[i] >= blocks[i].size()) throw Error(ErrorCode::InvalidArgument, "index out of range in block " + std::to_string(i));
    g = i == 0 ? blocks[i][iv[i]] : g * blocks[i][iv[i]];
  }
  if (blocks.empty()) throw Error(ErrorCode::InvalidArgument, "signature has no blocks");
  return g;
}

std::string LogSignature::element_key(const Matrix& g) const {
  return group.projective() ? detail::class_key(g) : g.key();
}

LengthBound min_length_bound(std::uint64_t order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "order must be positive");
  LengthBound b;
  b.order = order;
  for (auto p : prime_factors(order)) {
    unsigned a = 0;
    for (std::uint64_t t = order; t % p == 0; t /= p) ++a;
    b.factors.emplace_back(p, a);
    b.bound += a * p;
  }
  return b;
}

std::vector<std::uint64_t> prime_radix(std::uint64_t s) {
  std::vector<std::uint64_t> r;
  for (auto p : prime_factors(s))
    for (std::uint64_t t = s; t % p == 0; t /= p) r.push_back(p);
  return r;
}

std::vector<Block> cyclic_set_blocks(const Matrix& x, std::uint64_t s) {
  if (s == 0) throw Error(ErrorCode::InvalidArgument, "cyclic set of size 0");
  std::vector<Block> blocks;
  Matrix step = x;  // x^M
  for (auto r : prime_radix(s)) {
    Block b;
    Matrix y = Matrix::identity(x.field(), x.n());
    for (std::uint64_t d = 0; d < r; ++d) {
      b.push_back(y);
      y = y * step;
    }
    blocks.push_back(std::move(b));
    step = y;
  }
  return blocks;
}

LogSignature cyclic_set_mls(const Matrix& x, std::uint64_t s) {
  LogSignature ls;
  ls.group.family = Family::GL;
  ls.group.n = x.n();
  ls.group.q = x.field()->size();
  ls.claimed_order = s;
  ls.blocks = cyclic_set_blocks(x, s);
  ls.segments.push_back({0, prime_radix(s), x, s});
  return ls;
}

LogSignature semidirect_ls(const std::vector<Matrix>& A, const std::vector<Matrix>& B, const GroupDescriptor& group) {
  if (A.empty() || B.empty()) throw Error(ErrorCode::InvalidArgument, "empty factor");
  std::unordered_set<std::string> a_keys;
  for (const auto& a : A)
    if (!a.is_identity()) a_keys.insert(a.key());
  for (const auto& b : B)
    if (!b.is_identity() && a_keys.count(b.key()))
      throw Error(ErrorCode::InvalidArgument, "A and B share a nonidentity element");
  std::unordered_set<std::string> seen;
  for (const auto& a : A)
    for (const auto& b : B)
      if (!seen.insert((a * b).key()).second) throw Error(ErrorCode::InvalidArgument, "|AB| < |A||B|");
  LogSignature ls;
  ls.group = group;
  ls.claimed_order = A.size() * B.size();
  if (A.size() > 1) ls.blocks.push_back(A);
  if (B.size() > 1 || ls.blocks.empty()) ls.blocks.push_back(B);
  return ls;
}

FieldPtr field_for(std::uint64_t q) {
  const auto pf = prime_factors(q);
  if (pf.size() != 1) throw Error(ErrorCode::InvalidArgument, "q must be a prime power");
  unsigned e = 0;
  for (std::uint64_t t = q; t > 1; t /= pf[0]) ++e;
  return standard_field(static_cast<Code>(pf[0]), e);
}

QuadraticSpace space_for(const GroupDescriptor& desc) {
  validate(desc);
  if (desc.family == Family::GL) throw Error(ErrorCode::Unsupported, "GL has no quadratic space");
  return QuadraticSpace::canonical(desc.kind, field_for(desc.q), desc.n);
}

bool in_group(const QuadraticSpace& space, const GroupDescriptor& desc, const Matrix& g) {
  if (desc.family == Family::GL) return g.n() == desc.n && g.det() != 0;
  if (g.n() != space.dim()) return false;
  if (desc.family == Family::Parabolic) {
    if (!space.is_isometry(g)) return false;
    for (int c = 0; c < desc.k; ++c)
      for (int r = 0; r < g.n(); ++r)
        if (r >= desc.k && g(r, space.e_index(c))) return false;
    return true;
  }
  return space.in_family(g, desc.family);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string iv_text(const IndexVector& iv) {
  std::string s = "(";
  for (std::size_t i = 0; i < iv.size(); ++i) s += (i ? "," : "") + std::to_string(iv[i]);
  return s + ")";
}

}  // namespace

VerifyReport verify_ls(const LogSignature& ls, const VerifyOptions& opt) {
  VerifyReport r;
  r.mode = opt.exhaustive ? "exhaustive" : "sampled";
  r.length = ls.length();
  r.bound = min_length_bound(std::max<std::uint64_t>(ls.claimed_order, 1)).bound;
  r.seed = opt.seed;
  auto fail = [&](const std::string& why) {
    r.valid = false;
    ++r.failures;
    if (r.witness.empty()) r.witness = why;
  };

  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < ls.blocks.size(); ++i) {
    if (ls.blocks[i].empty()) {
      fail("block " + std::to_string(i) + " is empty");
      return r;
    }
    prod *= ls.blocks[i].size();
  }
  if (prod != ls.claimed_order) fail("product of block sizes " + std::to_string(prod) + " != claimed order");
  const std::uint64_t order = group_order(ls.group);
  if (order != ls.claimed_order)
    fail("claimed order " + std::to_string(ls.claimed_order) + " != |G| = " + std::to_string(order));
  if (r.failures) return r;

  std::optional<QuadraticSpace> space;
  if (ls.group.family != Family::GL) space = space_for(ls.group);
  auto member = [&](const Matrix& g) {
    if (ls.group.family == Family::GL) return in_group(QuadraticSpace{}, ls.group, g);
    return in_group(*space, ls.group, g);
  };
  for (std::size_t i = 0; i < ls.blocks.size(); ++i)
    for (std::size_t j = 0; j < ls.blocks[i].size(); ++j)
      if (!member(ls.blocks[i][j])) fail("block " + std::to_string(i) + " element " + std::to_string(j) + " is not in G");
  if (r.failures) return r;

  const std::size_t k = ls.blocks.size();
  if (opt.exhaustive) {
    if (ls.claimed_order > opt.budget)
      throw Error(ErrorCode::BudgetExceeded, "|G| = " + std::to_string(ls.claimed_order) + " exceeds the budget " +
                                                 std::to_string(opt.budget));
    std::unordered_map<std::string, IndexVector> seen;
    seen.reserve(ls.claimed_order * 2);
    if (k == 0) {
      r.checked = 1;
    } else {
      IndexVector iv(k, 0);
      std::vector<Matrix> prefix(k);
      std::size_t dirty = 0;
      for (std::uint64_t c = 0; c < ls.claimed_order; ++c) {
        for (std::size_t i = dirty; i < k; ++i) prefix[i] = i ? prefix[i - 1] * ls.blocks[i][iv[i]] : ls.blocks[0][iv[0]];
        auto [it, fresh] = seen.emplace(ls.element_key(prefix[k - 1]), iv);
        if (!fresh) {
          ++r.collisions;
          if (r.witness.empty()) r.witness = "products " + iv_text(it->second) + " and " + iv_text(iv) + " coincide";
        }
        ++r.checked;
        std::size_t b = k;
        while (b-- > 0) {
          if (++iv[b] < ls.blocks[b].size()) break;
          iv[b] = 0;
        }
        dirty = b == static_cast<std::size_t>(-1) ? 0 : b;
      }
    }
    r.valid = r.collisions == 0 && seen.size() == order;
  } else {
    if (!ls.decoder) {
      fail("no tame decoder attached");
      return r;
    }
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
      IndexVector iv(k);
      for (std::size_t i = 0; i < k; ++i) iv[i] = static_cast<std::uint32_t>(rng() % ls.blocks[i].size());
      ++r.checked;
      try {
        const Matrix g = ls.product(iv);
        if (ls.decoder->decode(g) != iv) fail("round trip failed at " + iv_text(iv));
      } catch (const Error& e) {
        fail("decoder error at " + iv_text(iv) + ": " + e.what());
      }
    }
    r.valid = r.failures == 0;
  }
  r.mls = r.valid && r.length == r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// Projection onto G/{+-I}

LogSignature project_ls(const LogSignature& ls) {
  GroupDescriptor pd = ls.group;
  if (pd.family == Family::SO)
    pd.family = Family::PSO;
  else if (pd.family == Family::Omega)
    pd.family = Family::POmega;
  else
    throw Error(ErrorCode::InvalidArgument, "projection needs an SO or Omega signature");

  LogSignature out = ls;
  out.group = pd;
  const bool center = minus_identity_in(pd);

  auto check_blocks = [&](std::size_t skip_first, std::size_t skip_count) {
    for (std::size_t b = 0; b < ls.blocks.size(); ++b) {
      if (b >= skip_first && b < skip_first + skip_count) continue;
      std::map<std::string, std::size_t> seen;
      for (std::size_t j = 0; j < ls.blocks[b].size(); ++j) {
        auto [it, fresh] = seen.emplace(detail::class_key(ls.blocks[b][j]), j);
        if (!fresh)
          throw Error(ErrorCode::InjectivityFail, "block " + std::to_string(b) + " holds elements " +
                                                      std::to_string(it->second) + " and " + std::to_string(j) +
                                                      " of one coset of {+-I}");
      }
    }
  };

  if (!center) {
    check_blocks(0, 0);
    if (ls.decoder) out.decoder = std::make_shared<detail::ProjectiveDecoder>(ls.decoder, CyclicSegment{}, CyclicSegment{}, false);
    out.notes.push_back("-I is not in the lift group; the quotient map is injective on G");
    return out;
  }

  if (!ls.decoder) throw Error(ErrorCode::InjectivityFail, "no decoder to locate the segment absorbing -I");
  std::mt19937_64 rng(7);
  const CyclicSegment* chosen = nullptr;
  for (const auto& seg : ls.segments) {
    if (seg.size % 2) continue;
    bool ok = true;
    for (int t = 0; t < 12 && ok; ++t) {
      IndexVector iv(ls.blocks.size(), 0);
      if (t)
        for (std::size_t i = 0; i < iv.size(); ++i) iv[i] = static_cast<std::uint32_t>(rng() % ls.blocks[i].size());
      try {
        const IndexVector jv = ls.decoder->decode(-ls.product(iv));
        for (std::size_t i = 0; i < seg.first_block && ok; ++i) ok = iv[i] == jv[i];
        const auto e1 = detail::radix_value(iv.data() + seg.first_block, seg.radix);
        const auto e2 = detail::radix_value(jv.data() + seg.first_block, seg.radix);
        ok = ok && (e1 + seg.size / 2) % seg.size == e2;
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) {
      chosen = &seg;
      break;
    }
  }
  if (!chosen) throw Error(ErrorCode::InjectivityFail, "no cyclic segment absorbs -I");
  check_blocks(chosen->first_block, chosen->radix.size());

  CyclicSegment half{chosen->first_block, prime_radix(chosen->size / 2), chosen->gen, chosen->size / 2};
  const auto first = static_cast<std::ptrdiff_t>(chosen->first_block);
  const auto old_len = static_cast<std::ptrdiff_t>(chosen->radix.size());
  out.blocks.assign(ls.blocks.begin(), ls.blocks.begin() + first);
  for (auto& b : cyclic_set_blocks(chosen->gen, half.size)) out.blocks.push_back(std::move(b));
  out.blocks.insert(out.blocks.end(), ls.blocks.begin() + first + old_len, ls.blocks.end());
  out.claimed_order = ls.claimed_order / 2;
  out.segments.clear();
  const auto shift = static_cast<std::ptrdiff_t>(half.radix.size()) - old_len;
  for (const auto& s : ls.segments) {
    if (&s == chosen) {
      out.segments.push_back(half);
    } else if (s.first_block > chosen->first_block) {
      CyclicSegment t = s;
      t.first_block = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(s.first_block) + shift);
      out.segments.push_back(t);
    } else if (s.first_block < chosen->first_block) {
      out.segments.push_back(s);
    }
  }
  out.decoder = std::make_shared<detail::ProjectiveDecoder>(ls.decoder, *chosen, half, true);
  out.notes.push_back("cyclic segment at block " + std::to_string(chosen->first_block) + " of size " +
                      std::to_string(chosen->size) + " halved to absorb -I");
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const LogSignature& ls) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : ls.blocks) {
    nlohmann::json jb = nlohmann::json::array();
    for (const auto& g : b) jb.push_back(to_json(g));
    blocks.push_back(std::move(jb));
  }
  return {{"group", to_json(ls.group)}, {"claimed_order", ls.claimed_order}, {"blocks", std::move(blocks)}};
}

LogSignature ls_from_json(const nlohmann::json& j) {
  LogSignature ls;
  try {
    ls.group = descriptor_from_json(j.at("group"));
    ls.claimed_order = j.at("claimed_order").get<std::uint64_t>();
    const FieldPtr F = field_for(ls.group.q);
    for (const auto& jb : j.at("blocks")) {
      Block b;
      for (const auto& jm : jb) b.push_back(matrix_from_json(jm, F));
      ls.blocks.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, std::string("signature file: ") + e.what());
  }
  // reattach the tame decoder when the blocks are the canonical ones
  try {
    LogSignature ref;
    if (ls.group.family == Family::Parabolic)
      ref = parabolic_ls(space_for(ls.group), ls.group.k);
    else
      ref = canonical_ls(ls.group);
    if (ref.blocks == ls.blocks) {
      ls.decoder = ref.decoder;
      ls.segments = ref.segments;
      ls.notes = ref.notes;
    }
  } catch (const Error&) {
  }
  return ls;
}

nlohmann::json to_json(const VerifyReport& r) {
  return {{"valid", r.valid},       {"mode", r.mode},     {"length", r.length},         {"bound", r.bound},
          {"mls", r.mls},           {"checked", r.checked}, {"collisions", r.collisions}, {"failures", r.failures},
          {"seed", r.seed},         {"witness", r.witness}};
}

nlohmann::json to_json(const LevelReport& r) {
  return {{"n", r.n},
          {"d", r.d},
          {"members", r.members},
          {"literal_a_in_group", r.literal_a_in_group},
          {"literal_a_sharp", r.literal_a_sharp},
          {"literal_a_orbit", r.literal_a_orbit},
          {"a_factor_sizes", r.a_factor_sizes},
          {"b_size", r.b_size},
          {"note", r.note}};
}

nlohmann::json to_json(const SpreadCheck& c) {
  return {{"kind", to_string(c.kind)},
          {"q", c.q},
          {"m", c.m},
          {"d", c.d},
          {"points", c.points},
          {"literal_a_sharp", c.literal_a_sharp},
          {"literal_a_orbit", c.literal_a_orbit},
          {"a_size", c.a_size},
          {"a_factor_sizes", c.a_factor_sizes},
          {"b_size", c.b_size},
          {"partition", to_json(c.partition)},
          {"a_sharp", c.a_sharp},
          {"b_sharp", c.b_sharp},
          {"ok", c.ok},
          {"note", c.note}};
}

}  // namespace olsig
