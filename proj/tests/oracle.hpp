#pragma once

// Brute-force oracles for the tests, written without the library's own closure code.

#include <set>
#include <string>
#include <vector>

#include "olsig/forms.hpp"
#include "olsig/lscore.hpp"

namespace oracle {

using olsig::Matrix;

// r_v(x) = x - f(x, v) Q(v)^-1 v, one per anisotropic vector up to scalars
inline std::vector<Matrix> reflections(const olsig::QuadraticSpace& V) {
  const auto& F = *V.field();
  const int n = V.dim();
  std::vector<Matrix> out;
  std::set<std::string> seen;
  std::vector<olsig::Code> v(n, 0);
  for (;;) {
    int i = 0;
    while (i < n && ++v[i] == F.size()) v[i++] = 0;
    if (i == n) break;
    const olsig::Code qv = V.Q(v);
    if (!qv) continue;
    std::vector<olsig::Vec> cols;
    for (int j = 0; j < n; ++j) {
      olsig::Vec x(n, 0);
      x[j] = 1;
      const olsig::Code c = F.div(V.f(x, v), qv);
      for (int k = 0; k < n; ++k) x[k] = F.sub(x[k], F.mul(c, v[k]));
      cols.push_back(x);
    }
    Matrix r = Matrix::from_columns(V.field(), cols);
    if (seen.insert(r.key()).second) out.push_back(r);
  }
  return out;
}

inline std::vector<Matrix> bfs(const std::vector<Matrix>& gens) {
  std::vector<Matrix> all{Matrix::identity(gens[0].field(), gens[0].n())};
  std::set<std::string> seen{all[0].key()};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& g : gens) {
      Matrix h = all[i] * g;
      if (seen.insert(h.key()).second) all.push_back(h);
    }
  return all;
}

// |G| for O/SO/Omega/projective by closure; Omega as the subgroup generated by
// the commutators [s, z], s a reflection, z in O
inline std::uint64_t closure_order(const olsig::GroupDescriptor& d) {
  using olsig::Family;
  const olsig::QuadraticSpace V = olsig::space_for(d);
  const auto R = reflections(V);
  const auto O = bfs(R);
  std::vector<Matrix> G;
  const Family f = d.projective() ? d.lift_family() : d.family;
  if (f == Family::O) G = O;
  if (f == Family::SO)
    for (const auto& g : O)
      if (g.det() == 1) G.push_back(g);
  if (f == Family::Omega) {
    std::vector<Matrix> comms;
    std::set<std::string> seen;
    for (const auto& s : R)
      for (const auto& z : O) {
        Matrix c = s * z.inverse() * s * z;
        if (seen.insert(c.key()).second) comms.push_back(c);
      }
    G = bfs(comms);
  }
  if (!d.projective()) return G.size();
  std::set<std::string> cls;
  for (const auto& g : G) {
    const std::string a = g.key(), b = (-g).key();
    cls.insert(a < b ? a : b);
  }
  return cls.size();
}

}  // namespace oracle
