#include "olsig/audit.hpp"

#include <deque>
#include <unordered_set>

#include "olsig/error.hpp"
#include "olsig/spreads.hpp"

namespace olsig {

std::vector<Matrix> closure(const std::vector<Matrix>& gens, std::uint64_t cap) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "no generators");
  std::vector<Matrix> out{Matrix::identity(gens[0].field(), gens[0].n())};
  std::unordered_set<std::string> seen{out[0].key()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : gens) {
      Matrix h = out[i] * s;
      if (seen.insert(h.key()).second) {
        if (out.size() >= cap) throw Error(ErrorCode::CapExceeded, "closure exceeds " + std::to_string(cap) + " elements");
        out.push_back(std::move(h));
      }
    }
  return out;
}

std::vector<Matrix> reflection_generators(const QuadraticSpace& V) {
  const GaloisField& F = *V.field();
  std::vector<Matrix> gens;
  std::unordered_set<std::uint64_t> seen;
  const std::uint64_t total = ipow(V.q(), static_cast<unsigned>(V.dim()));
  for (std::uint64_t key = 1; key < total; ++key) {
    const Vec v = vec_from_key(key, V.q(), V.dim());
    if (!V.Q(v)) continue;
    if (!seen.insert(vec_key(normalize_point(F, v), V.q())).second) continue;
    gens.push_back(V.reflection(v));
  }
  return gens;
}

std::vector<Matrix> derived_subgroup(const std::vector<Matrix>& elements, const std::vector<Matrix>& gens,
                                     std::uint64_t cap) {
  // [xy, z] = y^-1 [x, z] y [y, z], and y^-1 [s, z] y = [y^-1 s y, y^-1 z y]; with gens
  // closed under conjugation the commutators [s, z] generate the derived subgroup.
  std::vector<Matrix> comms;
  std::unordered_set<std::string> seen;
  for (const auto& s : gens) {
    const Matrix si = s.inverse();
    for (const auto& z : elements) {
      Matrix c = si * z.inverse() * s * z;
      if (!c.is_identity() && seen.insert(c.key()).second) comms.push_back(std::move(c));
    }
  }
  if (comms.empty()) return {Matrix::identity(elements[0].field(), elements[0].n())};
  return closure(comms, cap);
}

std::vector<Matrix> enumerate_group(const GroupDescriptor& desc, std::uint64_t cap) {
  validate(desc);
  if (desc.family == Family::GL || desc.family == Family::Parabolic)
    throw Error(ErrorCode::Unsupported, "closure enumeration covers the orthogonal families");
  const QuadraticSpace V = space_for(desc);
  const auto gens = reflection_generators(V);
  std::vector<Matrix> O = closure(gens, cap);
  std::vector<Matrix> out;
  switch (desc.projective() ? desc.lift_family() : desc.family) {
    case Family::O: out = std::move(O); break;
    case Family::SO:
      for (auto& g : O)
        if (g.det() == 1) out.push_back(std::move(g));
      break;
    case Family::Omega: out = derived_subgroup(O, gens, cap); break;
    default: throw Error(ErrorCode::Unsupported, "family");
  }
  if (!desc.projective()) return out;
  std::vector<Matrix> classes;
  std::unordered_set<std::string> seen;
  for (auto& g : out) {
    if (seen.count((-g).key())) continue;
    seen.insert(g.key());
    classes.push_back(std::move(g));
  }
  return classes;
}

OmegaAudit omega_audit(Kind kind, std::uint64_t q, int n, std::uint64_t cap) {
  OmegaAudit a;
  a.so = {Family::SO, kind, q, n, 0};
  validate(a.so);
  const QuadraticSpace V = space_for(a.so);
  const auto gens = reflection_generators(V);
  const auto O = closure(gens, cap);
  const auto D = derived_subgroup(O, gens, cap);
  std::unordered_set<std::string> in_d;
  for (const auto& g : D) in_d.insert(g.key());
  a.oracle_order = D.size();
  for (const auto& g : O) {
    if (g.det() != 1) continue;
    ++a.so_order;
    const bool oracle = in_d.count(g.key()) > 0;
    const bool crit = V.even_rank_criterion(g);
    const bool spin = V.in_family(g, Family::Omega);
    a.criterion_count += crit;
    a.spinor_count += spin;
    a.spinor_disagreements += spin != oracle;
    if (crit != oracle) {
      ++a.disagreements;
      Matrix h = g;
      for (int i = 0; i < n; ++i) h.at(i, i) = V.field()->add(h(i, i), 1);
      if (a.examples.size() < 4)
        a.examples.push_back("rank(I+g) = " + std::to_string(h.rank()) +
                             (oracle ? ", g in [O,O]: " : ", g not in [O,O]: ") + to_json(g).dump());
    }
  }
  return a;
}

ParabolicCheck parabolic_check(Kind kind, std::uint64_t q, int n, int k, std::uint64_t budget) {
  ParabolicCheck c;
  c.group = {Family::O, kind, q, n, 0};
  c.k = k;
  validate(c.group);
  const QuadraticSpace V = space_for(c.group);
  c.group_order = group_order(c.group);

  std::vector<Vec> span;
  for (int i = 0; i < k; ++i) span.push_back(V.basis_vector(V.e_index(i)));
  const auto gens = reflection_generators(V);
  std::unordered_set<std::string> seen;
  std::deque<Subspace> todo{Subspace(V.field(), n, span)};
  seen.insert(todo.front().key());
  while (!todo.empty()) {
    const Subspace W = todo.front();
    todo.pop_front();
    for (const auto& s : gens) {
      Subspace X = W.image(s);
      if (seen.insert(X.key()).second) todo.push_back(std::move(X));
    }
  }
  c.orbit = seen.size();

  const LogSignature ls = parabolic_ls(V, k);
  const std::size_t rblocks =
      static_cast<std::size_t>(k * (n - 2 * k) + k * (k - 1) / 2) * V.field()->degree();
  c.radical = c.levi = 1;
  for (std::size_t i = 0; i < ls.blocks.size(); ++i) (i < rblocks ? c.radical : c.levi) *= ls.blocks[i].size();

  VerifyOptions vo;
  vo.budget = budget;
  vo.exhaustive = ls.claimed_order <= budget;
  c.ls = verify_ls(ls, vo);
  c.ok = c.group_order % c.orbit == 0 && c.radical * c.levi == c.group_order / c.orbit && c.ls.valid;
  return c;
}

Omega3Check omega3_vs_sp2(std::uint64_t q) {
  Omega3Check c;
  c.q = q;
  c.omega3 = enumerate_group({Family::Omega, Kind::Odd, q, 3, 0}, 1000000).size();
  const FieldPtr F = field_for(q);
  std::vector<Matrix> gens;
  for (Code x : {Code{1}, F->primitive()}) {
    Matrix u = Matrix::identity(F, 2), l = u;
    u.at(0, 1) = x;
    l.at(1, 0) = x;
    gens.push_back(u);
    gens.push_back(l);
  }
  c.sp2 = closure(gens, 1000000).size();
  c.sp2_formula = q * (q * q - 1);
  c.ok = c.omega3 == c.sp2 && c.sp2 == c.sp2_formula;
  return c;
}

nlohmann::json to_json(const OmegaAudit& a) {
  return {{"group", to_json(a.so)},
          {"so_order", a.so_order},
          {"commutator_oracle_order", a.oracle_order},
          {"even_rank_count", a.criterion_count},
          {"spinor_norm_count", a.spinor_count},
          {"disagreements", a.disagreements},
          {"spinor_disagreements", a.spinor_disagreements},
          {"agree", a.agree()},
          {"examples", a.examples}};
}

nlohmann::json to_json(const ParabolicCheck& c) {
  return {{"group", to_json(c.group)}, {"k", c.k},           {"group_order", c.group_order},
          {"orbit", c.orbit},          {"radical", c.radical}, {"levi", c.levi},
          {"stabilizer", c.orbit ? c.group_order / c.orbit : 0},
          {"ls", to_json(c.ls)},       {"ok", c.ok}};
}

nlohmann::json to_json(const Omega3Check& c) {
  return {{"q", c.q}, {"omega3", c.omega3}, {"sp2", c.sp2}, {"sp2_formula", c.sp2_formula}, {"ok", c.ok}};
}

}  // namespace olsig
