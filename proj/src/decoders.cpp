#include "decoders.hpp"

#include "olsig/error.hpp"

namespace olsig::detail {

std::vector<std::uint32_t> radix_digits(std::uint64_t e, const std::vector<std::uint64_t>& radix) {
  std::vector<std::uint32_t> d;
  d.reserve(radix.size());
  for (auto r : radix) {
    d.push_back(static_cast<std::uint32_t>(e % r));
    e /= r;
  }
  return d;
}

std::uint64_t radix_value(const std::uint32_t* digits, const std::vector<std::uint64_t>& radix) {
  std::uint64_t v = 0, M = 1;
  for (std::size_t i = 0; i < radix.size(); ++i) {
    v += digits[i] * M;
    M *= radix[i];
  }
  return v;
}

std::string class_key(const Matrix& g) {
  std::string a = g.key(), b = (-g).key();
  return a < b ? a : b;
}

std::size_t LevelPlan::block_count() const {
  if (base) return base_blocks;
  return transversal_blocks + siegel_coords.size() * field_degree + levi_radix.size() + (sub ? sub->block_count() : 0);
}

IndexVector LevelDecoder::decode(const Matrix& g, DecodeStats* stats) const {
  IndexVector out(total_, 0);
  decode_level(*plan_, g, out, stats);
  return out;
}

void LevelDecoder::decode_level(const LevelPlan& L, Matrix g, IndexVector& out, DecodeStats* stats) const {
  if (stats) ++stats->levels;
  if (L.base) {
    if (stats) ++stats->table_lookups;
    auto it = L.base_table.find(g.key());
    if (it == L.base_table.end()) throw Error(ErrorCode::NotInGroup, "no base element matches");
    std::copy(it->second.begin(), it->second.end(), out.begin() + static_cast<std::ptrdiff_t>(L.first_block));
    return;
  }
  const QuadraticSpace& V = L.space;
  const GaloisField& F = *V.field();
  const int n = V.dim(), e0 = V.e_index(0), f0 = V.f_index(0);

  Vec p = g.column(e0);
  if (stats) ++stats->table_lookups;
  auto it = L.transversal.find(vec_key(normalize_point(F, p), V.q()));
  if (it == L.transversal.end()) throw Error(ErrorCode::NotInGroup, "image of e_1 is not a singular point");
  std::copy(it->second.indices.begin(), it->second.indices.end(),
            out.begin() + static_cast<std::ptrdiff_t>(L.first_block));
  g = it->second.inverse * g;

  const Code lambda = g(e0, e0);
  for (int i = 0; i < n; ++i)
    if (i != e0 && g(i, e0)) throw Error(ErrorCode::NotInGroup, "stabilizer element does not fix <e_1>");
  if (!lambda) throw Error(ErrorCode::NotInGroup, "singular matrix");
  Vec v = g.column(f0);
  for (auto& x : v) x = F.mul(x, lambda);
  if (v[f0] != 1) throw Error(ErrorCode::NotInGroup, "f_1 coefficient mismatch");
  Vec u = v;
  u[e0] = 0;
  u[f0] = 0;
  if (v[e0] != F.neg(V.Q(u))) throw Error(ErrorCode::NotInGroup, "image of f_1 is not singular");
  for (std::size_t k = 0; k < L.siegel_coords.size(); ++k) {
    const auto c = F.coeffs(u[L.siegel_coords[k]]);
    for (unsigned b = 0; b < L.field_degree; ++b)
      out[L.siegel_first() + k * L.field_degree + b] = static_cast<std::uint32_t>(b < c.size() ? c[b] : 0);
  }
  Vec mu = u;
  for (auto& x : mu) x = F.neg(x);
  g = V.siegel(mu, 0) * g;

  if (stats) ++stats->discrete_logs;
  const std::uint32_t lg = F.log(lambda);
  if (lg % L.levi_step) throw Error(ErrorCode::NotInGroup, "scalar on e_1 outside the Levi torus");
  const std::uint64_t i = lg / L.levi_step;
  if (i >= L.levi_size) throw Error(ErrorCode::NotInGroup, "Levi exponent out of range");
  const auto digits = radix_digits(i, L.levi_radix);
  std::copy(digits.begin(), digits.end(), out.begin() + static_cast<std::ptrdiff_t>(L.levi_first()));
  if (i) g = L.levi_gen.pow(-static_cast<std::int64_t>(i)) * g;

  for (int k = 0; k < n; ++k) {
    const Code want_e = k == e0 ? 1 : 0, want_f = k == f0 ? 1 : 0;
    if (g(k, e0) != want_e || g(k, f0) != want_f || g(e0, k) != want_e || g(f0, k) != want_f)
      throw Error(ErrorCode::NotInGroup, "remainder does not fix the hyperbolic pair");
  }
  if (!L.sub) {
    if (!g.is_identity()) throw Error(ErrorCode::NotInGroup, "nontrivial remainder");
    return;
  }
  decode_level(*L.sub, V.restrict_complement(g), out, stats);
}

TableDecoder::TableDecoder(const LogSignature& ls) : projective_(ls.group.projective()) {
  const std::size_t k = ls.blocks.size();
  const auto total = ls.length() ? ls.claimed_order : 1;
  IndexVector iv(k, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    const Matrix g = ls.product(iv);
    table_.emplace(projective_ ? class_key(g) : g.key(), iv);
    for (std::size_t b = 0; b < k; ++b) {
      if (++iv[b] < ls.blocks[b].size()) break;
      iv[b] = 0;
    }
  }
}

IndexVector TableDecoder::decode(const Matrix& g, DecodeStats* stats) const {
  if (stats) ++stats->table_lookups;
  auto it = table_.find(projective_ ? class_key(g) : g.key());
  if (it == table_.end()) throw Error(ErrorCode::NotInGroup, "element not covered by the signature");
  return it->second;
}

IndexVector ProjectiveDecoder::decode(const Matrix& g, DecodeStats* stats) const {
  auto lift = [&](const Matrix& x) -> std::optional<IndexVector> {
    try {
      return lift_->decode(x, stats);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInGroup) throw;
      return std::nullopt;
    }
  };
  auto iv = lift(g);
  const Matrix ng = -g;
  if (!iv) iv = lift(ng);
  if (!iv) throw Error(ErrorCode::NotInGroup, "neither lift lies in the group");
  if (!halved_) return *iv;
  std::uint64_t e = radix_value(iv->data() + old_.first_block, old_.radix);
  if (e >= new_.size) {
    iv = lift(ng);
    if (!iv) throw Error(ErrorCode::ConstructionMismatch, "-I is not absorbed by the halved segment");
    e = radix_value(iv->data() + old_.first_block, old_.radix);
    if (e >= new_.size) throw Error(ErrorCode::ConstructionMismatch, "-I is not absorbed by the halved segment");
  }
  IndexVector out(iv->begin(), iv->begin() + static_cast<std::ptrdiff_t>(old_.first_block));
  for (auto d : radix_digits(e, new_.radix)) out.push_back(d);
  out.insert(out.end(), iv->begin() + static_cast<std::ptrdiff_t>(old_.first_block + old_.radix.size()), iv->end());
  return out;
}

IndexVector PermutedDecoder::decode(const Matrix& g, DecodeStats* stats) const {
  IndexVector iv = base_->decode(g, stats);
  for (std::size_t i = 0; i < iv.size(); ++i) iv[i] = perm_[i][iv[i]];
  return iv;
}

}  // namespace olsig::detail
