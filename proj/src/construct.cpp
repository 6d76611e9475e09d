#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "decoders.hpp"
#include "olsig/error.hpp"
#include "olsig/lscore.hpp"

namespace olsig {

namespace {

std::uint64_t order_of(const Matrix& g) { return element_order(g, 1u << 22).value_or(0); }

Matrix levi_diag(const QuadraticSpace& V, const Matrix& D) {
  // D on e_0..e_{k-1}, D^{-t} on f_0..f_{k-1}
  Matrix g = Matrix::identity(V.field(), V.dim());
  const Matrix Dt = D.transpose_inverse();
  for (int i = 0; i < D.n(); ++i)
    for (int j = 0; j < D.n(); ++j) {
      g.at(V.e_index(i), V.e_index(j)) = D(i, j);
      g.at(V.f_index(i), V.f_index(j)) = Dt(i, j);
    }
  return g;
}

struct MinusTorus {
  Matrix a, frob;
};

// T_{alpha^{q^m-1}} and x -> x^q on the minus model, in Witt coordinates.
MinusTorus minus_torus(Code p, unsigned e, unsigned m) {
  const FieldTower tower = make_tower(p, e, m);
  const QuadraticSpace S = QuadraticSpace::from_tower(Kind::Minus, tower);
  const GaloisField& E = *tower.top();
  const std::uint64_t q = tower.q();
  MinusTorus t;
  t.a = S.from_model(mult_matrix(E.pow(tower.alpha(), ipow(q, m) - 1), tower));
  const ExtensionBasis B = tower_basis(tower);
  std::vector<Vec> cols;
  for (unsigned j = 0; j < 2 * m; ++j) {
    Vec u(2 * m, 0);
    u[j] = 1;
    cols.push_back(B.coords(E.pow(B.element(u), q)));
  }
  t.frob = S.from_model(Matrix::from_columns(tower.base(), cols));
  return t;
}

// Conjugates diag(x, I) into V, where x acts on a minus space whose pairs map to the
// first pairs of V, A_1 -> a1_image, A_2 -> a2_image, and I acts on `rest`.
Matrix embed_minus(const QuadraticSpace& V, const Matrix& x, int pairs, const Vec& a1_image, const Vec& a2_image,
                   const std::vector<Vec>& rest) {
  std::vector<Vec> cols;
  for (int i = 0; i < pairs; ++i) cols.push_back(V.basis_vector(V.e_index(i)));
  for (int i = 0; i < pairs; ++i) cols.push_back(V.basis_vector(V.f_index(i)));
  cols.push_back(a1_image);
  cols.push_back(a2_image);
  for (const auto& r : rest) cols.push_back(r);
  const Matrix P = Matrix::from_columns(V.field(), cols);
  Matrix big = Matrix::identity(V.field(), V.dim());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) big.at(i, j) = x(i, j);
  return P * big * P.inverse();
}

Vec combo(const QuadraticSpace& V, int i, Code ci, int j, Code cj) {
  Vec v(V.dim(), 0);
  v[i] = ci;
  v[j] = cj;
  return v;
}

}  // namespace

Table1Pair table1_generators_unchecked(const GroupDescriptor& desc) {
  validate(desc);
  const QuadraticSpace V = space_for(desc);
  const FieldPtr& F = V.field();
  const auto pf = prime_factors(desc.q);
  const Code p = static_cast<Code>(pf[0]);
  const unsigned e = F->degree();
  const int m = desc.m();
  const std::uint64_t q = desc.q;
  const Code nu = V.nu();
  Table1Pair t;
  t.a = Matrix::identity(F, V.dim());
  t.b = t.a;
  int bdim = 0;
  switch (desc.kind) {
    case Kind::Minus: {
      const MinusTorus T = minus_torus(p, e, static_cast<unsigned>(m));
      t.a = T.a;
      t.extras.push_back(T.frob);
      bdim = m - 1;
      t.expected_a = ipow(q, m) + 1;
      t.expected_b = m == 1 ? 1 : ipow(q, m - 1) - 1;
      break;
    }
    case Kind::Plus: {
      if (m >= 2) {
        const MinusTorus T = minus_torus(p, e, static_cast<unsigned>(m - 1));
        const int k = m - 2;
        const Vec A1 = combo(V, V.e_index(k), 1, V.f_index(k), 1);
        const Vec A2 = combo(V, V.e_index(m - 1), 1, V.f_index(m - 1), F->neg(nu));
        const std::vector<Vec> rest = {combo(V, V.e_index(k), 1, V.f_index(k), F->neg(1)),
                                       combo(V, V.e_index(m - 1), 1, V.f_index(m - 1), nu)};
        t.a = embed_minus(V, T.a, k, A1, A2, rest);
        t.extras.push_back(embed_minus(V, T.frob, k, A1, A2, rest));
      }
      bdim = m;
      t.expected_a = ipow(q, m - 1) + 1;
      t.expected_b = ipow(q, m) - 1;
      break;
    }
    case Kind::Odd: {
      if (m >= 1) {
        const MinusTorus T = minus_torus(p, e, static_cast<unsigned>(m));
        const int k = m - 1;
        const Vec A1 = V.basis_vector(V.aniso_index(0));
        const Vec A2 = combo(V, V.e_index(k), 1, V.f_index(k), F->neg(nu));
        const std::vector<Vec> rest = {combo(V, V.e_index(k), 1, V.f_index(k), nu)};
        t.a = embed_minus(V, T.a, k, A1, A2, rest);
        t.extras.push_back(embed_minus(V, T.frob, k, A1, A2, rest));
      }
      bdim = m;
      t.expected_a = ipow(q, m) + 1;
      t.expected_b = ipow(q, m) - 1;
      break;
    }
  }
  if (bdim >= 1) t.b = levi_diag(V, singer_generator(static_cast<unsigned>(bdim), F));
  t.order_a = order_of(t.a);
  t.order_b = order_of(t.b);
  std::erase_if(t.extras, [&](const Matrix& x) { return !V.is_isometry(x); });
  return t;
}

Table1Pair table1_generators(const GroupDescriptor& desc) {
  if (desc.family != Family::O && desc.family != Family::SO)
    throw Error(ErrorCode::InvalidArgument, "the table covers O and SO only");
  Table1Pair t = table1_generators_unchecked(desc);
  const QuadraticSpace V = space_for(desc);
  for (const auto* x : {&t.a, &t.b})
    if (!V.in_family(*x, desc.family))
      throw Error(ErrorCode::ConstructionMismatch, std::string(x == &t.a ? "a" : "b") + " is not in " + desc.name());
  if (t.order_a != t.expected_a)
    throw Error(ErrorCode::ConstructionMismatch,
                "order(a) = " + std::to_string(t.order_a) + ", expected " + std::to_string(t.expected_a));
  if (t.order_b != t.expected_b)
    throw Error(ErrorCode::ConstructionMismatch,
                "order(b) = " + std::to_string(t.order_b) + ", expected " + std::to_string(t.expected_b));
  return t;
}

// ---------------------------------------------------------------------------
// Random elements

RandomElements::RandomElements(const QuadraticSpace& space, Family family, std::uint64_t seed)
    : space_(space), family_(family), rng_(seed), cur_(Matrix::identity(space.field(), space.dim())) {
  if (family_ == Family::PSO) family_ = Family::SO;
  if (family_ == Family::POmega) family_ = Family::Omega;
}

Vec RandomElements::random_anisotropic(int square_class) {
  const GaloisField& F = *space_.field();
  for (;;) {
    Vec v(space_.dim());
    for (auto& x : v) x = static_cast<Code>(rng_() % F.size());
    const Code qv = space_.Q(v);
    if (!qv) continue;
    if (square_class >= 0 && F.is_square(qv) != (square_class == 0)) continue;
    return v;
  }
}

const Matrix& RandomElements::next() {
  const GaloisField& F = *space_.field();
  switch (family_) {
    case Family::O: {
      const int steps = 1 + static_cast<int>(rng_() % 2);
      for (int s = 0; s < steps; ++s) cur_ = cur_ * space_.reflection(random_anisotropic(-1));
      break;
    }
    case Family::SO:
      cur_ = cur_ * space_.reflection(random_anisotropic(-1)) * space_.reflection(random_anisotropic(-1));
      break;
    case Family::Omega: {
      const Vec v1 = random_anisotropic(-1);
      const int cls = F.is_square(space_.Q(v1)) ? 0 : 1;
      cur_ = cur_ * space_.reflection(v1) * space_.reflection(random_anisotropic(cls));
      break;
    }
    default: throw Error(ErrorCode::Unsupported, "random elements need an orthogonal family");
  }
  return cur_;
}

// ---------------------------------------------------------------------------
// Sharply transitive sets on W0-images

namespace {

class PointTable {
 public:
  explicit PointTable(const QuadraticSpace& V) : V_(V), pts_(V.singular_points()) {
    for (std::size_t i = 0; i < pts_.size(); ++i) idx_.emplace(vec_key(pts_[i], V.q()), static_cast<int>(i));
  }
  int size() const { return static_cast<int>(pts_.size()); }
  const Vec& point(int i) const { return pts_[i]; }
  int index_of(const Vec& v) const {
    auto it = idx_.find(vec_key(normalize_point(*V_.field(), v), V_.q()));
    if (it == idx_.end()) throw Error(ErrorCode::ConstructionMismatch, "image is not a singular point");
    return it->second;
  }
  int image(const Matrix& g, int i) const { return index_of(g * pts_[i]); }
  std::vector<int> indices(const std::vector<std::uint64_t>& keys) const {
    std::vector<int> out;
    for (auto k : keys) {
      auto it = idx_.find(k);
      if (it == idx_.end()) throw Error(ErrorCode::InvalidArgument, "W0 is not totally singular");
      out.push_back(it->second);
    }
    return out;
  }

 private:
  const QuadraticSpace& V_;
  std::vector<Vec> pts_;
  std::unordered_map<std::uint64_t, int> idx_;
};

Subspace base_subspace(const QuadraticSpace& V, int d) {
  std::vector<Vec> span;
  for (int i = 0; i < d; ++i) span.push_back(V.basis_vector(V.e_index(i)));
  return Subspace(V.field(), V.dim(), span);
}

std::vector<std::uint64_t> divisors_desc(std::uint64_t s) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t i = 1; i <= s; ++i)
    if (s % i == 0) d.push_back(i);
  std::reverse(d.begin(), d.end());
  return d;
}

// Totally singular d-spaces as sorted point-index lists, with a lookup by content.
struct SubspaceTable {
  std::vector<std::vector<int>> pts;
  std::map<std::vector<int>, int> id;

  int image(const PointTable& P, const std::vector<int>& perm_or_empty, const Matrix* g, int s) const {
    std::vector<int> v;
    v.reserve(pts[s].size());
    for (int x : pts[s]) v.push_back(g ? P.image(*g, x) : perm_or_empty[x]);
    std::sort(v.begin(), v.end());
    auto it = id.find(v);
    return it == id.end() ? -1 : it->second;
  }
};

// Spreads made of whole <c>-orbits of d-spaces containing the orbit of W0, by exact
// cover over the points; at most `limit` of them.
std::vector<std::vector<int>> orbit_spreads(const SubspaceTable& T, const std::vector<std::vector<int>>& orbits, int w0_orbit, int N,
                                            std::size_t limit, std::uint64_t node_budget) {
  std::vector<std::vector<int>> covering(N);  // point -> good orbits through it
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (int s : orbits[o])
      for (int x : T.pts[s]) covering[x].push_back(static_cast<int>(o));
  std::vector<char> covered(N, 0);
  std::vector<int> chosen;
  std::vector<std::vector<int>> found;
  std::uint64_t nodes = 0;
  auto fits = [&](int o) {
    for (int s : orbits[o])
      for (int x : T.pts[s])
        if (covered[x]) return false;
    return true;
  };
  auto set = [&](int o, char v) {
    for (int s : orbits[o])
      for (int x : T.pts[s]) covered[x] = v;
  };
  std::function<void()> dfs = [&]() {
    if (found.size() >= limit || ++nodes > node_budget) return;
    int best = -1;
    std::size_t best_n = SIZE_MAX;
    for (int x = 0; x < N; ++x) {
      if (covered[x]) continue;
      std::size_t c = 0;
      for (int o : covering[x]) c += fits(o);
      if (c < best_n) {
        best_n = c;
        best = x;
      }
      if (c == 0) break;
    }
    if (best < 0) {
      found.push_back(chosen);
      return;
    }
    for (int o : covering[best]) {
      if (!fits(o)) continue;
      set(o, 1);
      chosen.push_back(o);
      dfs();
      chosen.pop_back();
      set(o, 0);
    }
  };
  set(w0_orbit, 1);
  chosen.push_back(w0_orbit);
  dfs();
  return found;
}

struct Core {
  Matrix c;
  int index;
  std::vector<int> perm;  // action on point indices
  std::uint64_t prefix;   // disjoint W0-images along c^0, c^1, ...
};

std::optional<FallbackResult> guided_search(const QuadraticSpace& space, int d, const PointTable& P,
                                            const std::vector<int>& w0, const std::vector<Core>& cs,
                                            const std::vector<Matrix>& hints, RandomElements& walk,
                                            const FallbackOptions& opt, std::uint64_t s_total,
                                            std::uint64_t& attempts) {
  const auto subs = totally_singular_subspaces(space, d);
  if (subs.size() > 20000) return std::nullopt;
  SubspaceTable T;
  for (const auto& W : subs) {
    T.pts.push_back(P.indices(W.point_keys()));
    std::sort(T.pts.back().begin(), T.pts.back().end());
    T.id.emplace(T.pts.back(), static_cast<int>(T.pts.size() - 1));
  }
  std::vector<int> sorted_w0 = w0;
  std::sort(sorted_w0.begin(), sorted_w0.end());
  const int w0_id = T.id.at(sorted_w0);
  const int M = static_cast<int>(T.pts.size());

  struct Orbits {
    std::vector<int> orbit_of;  // -1 unless the orbit's members are disjoint
    std::vector<std::vector<int>> orbits;
    int w0_orbit = -1;
    std::uint64_t s1 = 0;
  };
  // <c>-orbits on d-spaces; keep those whose members are pairwise disjoint
  auto analyse = [&](const std::vector<int>& perm) {
    Orbits A;
    A.orbit_of.assign(M, -1);
    std::vector<char> done(M, 0);
    for (int start = 0; start < M; ++start) {
      if (done[start]) continue;
      std::vector<int> orb;
      for (int x = start; x >= 0 && (orb.empty() || x != start); x = T.image(P, perm, nullptr, x)) orb.push_back(x);
      for (int x : orb) done[x] = 1;
      const bool has_w0 = std::find(orb.begin(), orb.end(), w0_id) != orb.end();
      if (has_w0) A.s1 = orb.size();
      std::vector<char> seen(P.size(), 0);
      bool disjoint = true;
      for (int x : orb)
        for (int y : T.pts[x]) {
          if (seen[y]) disjoint = false;
          seen[y] = 1;
        }
      if (!disjoint) continue;
      for (int x : orb) A.orbit_of[x] = static_cast<int>(A.orbits.size());
      if (has_w0) A.w0_orbit = static_cast<int>(A.orbits.size());
      A.orbits.push_back(std::move(orb));
    }
    return A;
  };
  auto usable = [&](std::uint64_t s) { return s >= 2 && s_total % s == 0; };

  for (const auto& core0 : cs) {
    if (core0.index < 0) continue;
    Core core = core0;
    Orbits A = analyse(core.perm);
    if (A.w0_orbit < 0 || !usable(A.s1)) {
      // conjugate c by h with h(W0) on the longest usable disjoint orbit
      std::uint64_t best = 0;
      for (const auto& o : A.orbits)
        if (usable(o.size())) best = std::max<std::uint64_t>(best, o.size());
      if (!best) continue;
      bool moved = false;
      for (std::uint64_t a = 0; a < opt.attempts_per_factor && !moved; ++a) {
        ++attempts;
        const Matrix h = walk.next();
        const int img = T.image(P, {}, &h, w0_id);
        if (img < 0 || A.orbit_of[img] < 0 || A.orbits[A.orbit_of[img]].size() != best) continue;
        core.c = h.inverse() * core.c * h;
        for (int x = 0; x < P.size(); ++x) core.perm[x] = P.image(core.c, x);
        moved = true;
      }
      if (!moved) continue;
      A = analyse(core.perm);
      if (A.w0_orbit < 0 || !usable(A.s1)) continue;
    }
    auto& orbit_of = A.orbit_of;
    auto& orbits = A.orbits;
    const int w0_orbit = A.w0_orbit;
    const std::uint64_t s1 = A.s1;
    std::vector<std::vector<int>> good;
    std::vector<int> remap(orbits.size(), -1);
    for (std::size_t o = 0; o < orbits.size(); ++o)
      if (orbits[o].size() == s1) {
        remap[o] = static_cast<int>(good.size());
        good.push_back(orbits[o]);
      }
    for (auto& o : orbit_of) o = o >= 0 ? remap[o] : -1;
    const int g0 = remap[w0_orbit];

    auto primes = prime_radix(s_total / s1);
    std::reverse(primes.begin(), primes.end());
    for (const auto& spread : orbit_spreads(T, good, g0, P.size(), 4, 2000000)) {
      std::vector<char> in_spread(good.size(), 0);
      for (int o : spread) in_spread[o] = 1;
      for (unsigned restart = 0; restart <= opt.restarts; ++restart) {
        std::vector<int> C = {w0_id};
        std::vector<char> used(good.size(), 0);
        used[g0] = 1;
        std::vector<CyclicFactor> ys;
        bool ok = true;
        for (auto p : primes) {
          bool found = false;
          for (std::uint64_t a = 0; a < opt.attempts_per_factor && !found; ++a) {
            ++attempts;
            const Matrix x = restart == 0 && a < hints.size() ? hints[a] : walk.next();
            std::vector<int> taken, grown = C;
            bool good_x = true;
            Matrix xp = x;
            for (std::uint64_t j = 1; j < p && good_x; ++j, xp = xp * x)
              for (int c : C) {
                const int img = T.image(P, {}, &xp, c);
                const int o = img < 0 ? -1 : orbit_of[img];
                if (o < 0 || !in_spread[o] || used[o]) {
                  good_x = false;
                  break;
                }
                used[o] = 1;
                taken.push_back(o);
                grown.push_back(img);
              }
            if (!good_x) {
              for (int o : taken) used[o] = 0;
              continue;
            }
            C = std::move(grown);
            ys.push_back({x, p});
            found = true;
          }
          if (!found) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        FallbackResult res;
        res.factors.push_back({core.c, s1});
        res.factors.insert(res.factors.end(), ys.rbegin(), ys.rend());
        res.core_size = s1;
        res.core_index = core.index;
        return res;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

FallbackResult fallback_search(const QuadraticSpace& space, Family family, int d, const std::vector<Matrix>& cores,
                               const FallbackOptions& opt) {
  FallbackResult res;
  const PointTable P(space);
  const int N = P.size();
  if (N == 0) return res;
  const std::uint64_t q = space.q();
  const std::uint64_t ppm = (ipow(q, static_cast<unsigned>(d)) - 1) / (q - 1);
  if (d < 1 || d > space.witt_index() || N % ppm)
    throw Error(ErrorCode::InvalidArgument, "no partial spread of " + std::to_string(d) + "-spaces can cover L");
  const std::uint64_t s_total = N / ppm;
  const std::vector<int> w0 = P.indices(base_subspace(space, d).point_keys());

  std::vector<Core> cs;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    if (!space.in_family(cores[i], family) || cores[i].is_identity()) continue;
    Core c{cores[i], static_cast<int>(i), std::vector<int>(N), 0};
    for (int x = 0; x < N; ++x) c.perm[x] = P.image(cores[i], x);
    std::vector<char> used(N, 0);
    std::vector<int> cur = w0;
    while (c.prefix < s_total) {
      if (std::any_of(cur.begin(), cur.end(), [&](int x) { return used[x]; })) break;
      for (int x : cur) used[x] = 1;
      ++c.prefix;
      for (int& x : cur) x = c.perm[x];
    }
    cs.push_back(std::move(c));
  }
  std::stable_sort(cs.begin(), cs.end(), [](const Core& a, const Core& b) { return a.prefix > b.prefix; });
  std::vector<int> ident(N);
  for (int x = 0; x < N; ++x) ident[x] = x;
  cs.push_back({Matrix::identity(space.field(), space.dim()), -1, ident, 1});

  std::vector<Matrix> hints;
  for (const auto& h : opt.hints)
    if (space.in_family(h, family) && !h.is_identity()) hints.push_back(h);

  RandomElements walk(space, family, opt.seed);
  if (d >= 2)
    if (auto g = guided_search(space, d, P, w0, cs, hints, walk, opt, s_total, res.attempts)) {
      g->attempts = res.attempts;
      return *g;
    }
  for (const auto& core : cs) {
    for (auto s1 : divisors_desc(s_total)) {
      if (s1 > core.prefix || (s1 == 1) != (core.index < 0)) continue;
      // trajectory of a point under c^0..c^{s1-1}; empty when it repeats
      auto traj = [&](int x) {
        std::vector<int> t;
        for (std::uint64_t i = 0; i < s1; ++i, x = core.perm[x]) {
          if (std::find(t.begin(), t.end(), x) != t.end()) return std::vector<int>{};
          t.push_back(x);
        }
        return t;
      };
      const std::uint64_t R = s_total / s1;
      auto primes = prime_radix(R);
      std::reverse(primes.begin(), primes.end());
      for (unsigned restart = 0; restart <= opt.restarts; ++restart) {
        std::vector<int> C = w0;
        std::vector<char> blocked(N, 0);
        for (int x : C)
          for (int y : traj(x)) blocked[y] = 1;
        std::vector<CyclicFactor> ys;
        bool ok = true;
        for (auto p : primes) {
          bool found = false;
          for (std::uint64_t a = 0; a < opt.attempts_per_factor && !found; ++a) {
            ++res.attempts;
            const Matrix x = restart == 0 && a < hints.size() ? hints[a] : walk.next();
            std::vector<int> marked;
            bool good = true;
            Matrix xp = x;
            for (std::uint64_t j = 1; j < p && good; ++j, xp = xp * x) {
              for (int c : C) {
                const auto t = traj(P.image(xp, c));
                if (t.empty() || std::any_of(t.begin(), t.end(), [&](int y) { return blocked[y]; })) {
                  good = false;
                  break;
                }
                for (int y : t) {
                  blocked[y] = 1;
                  marked.push_back(y);
                }
              }
            }
            if (!good) {
              for (int y : marked) blocked[y] = 0;
              continue;
            }
            std::vector<int> grown = C;
            Matrix xj = x;
            for (std::uint64_t j = 1; j < p; ++j, xj = xj * x)
              for (int c : C) grown.push_back(P.image(xj, c));
            C = std::move(grown);
            ys.push_back({x, p});
            found = true;
          }
          if (!found) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        res.factors.clear();
        if (s1 > 1) res.factors.push_back({core.c, s1});
        res.factors.insert(res.factors.end(), ys.rbegin(), ys.rend());
        res.core_size = s1;
        res.core_index = core.index;
        return res;
      }
    }
  }
  throw Error(ErrorCode::NotFound, "no factored sharply transitive set after " + std::to_string(res.attempts) +
                                       " candidate elements");
}

// ---------------------------------------------------------------------------
// Canonical construction

namespace {

using detail::LevelPlan;

bool is_base(const QuadraticSpace& V) { return V.dim() <= 2; }

Matrix levi_scalar(const QuadraticSpace& V, Code lambda) {
  Matrix l = Matrix::identity(V.field(), V.dim());
  l.at(V.e_index(0), V.e_index(0)) = lambda;
  l.at(V.f_index(0), V.f_index(0)) = V.field()->inv(lambda);
  return l;
}

// r_a r_b with a, b supported on coords and Q(a)Q(b) a nonsquare.
std::optional<Matrix> nonsquare_pair(const QuadraticSpace& V, const std::vector<int>& coords) {
  const GaloisField& F = *V.field();
  const int k = static_cast<int>(coords.size());
  if (k < 2) return std::nullopt;
  std::optional<Vec> a;
  const std::uint64_t total = ipow(V.q(), static_cast<unsigned>(k));
  for (std::uint64_t key = 1; key < total; ++key) {
    const Vec s = vec_from_key(key, V.q(), k);
    Vec v(V.dim(), 0);
    for (int i = 0; i < k; ++i) v[coords[i]] = s[i];
    const Code qv = V.Q(v);
    if (!qv) continue;
    if (!a) {
      a = v;
      continue;
    }
    if (!F.is_square(F.mul(qv, V.Q(*a)))) return V.reflection(*a) * V.reflection(v);
  }
  return std::nullopt;
}

struct LevelBuild {
  std::shared_ptr<LevelPlan> plan;
  std::vector<Block> blocks;
  std::vector<CyclicSegment> segs;
};

struct Context {
  CanonicalOptions opt;
  std::vector<LevelReport> reports;
  std::vector<std::string> notes;
};

void push_cyclic(LevelBuild& b, std::size_t offset, const Matrix& gen, std::uint64_t size) {
  if (size <= 1) return;
  b.segs.push_back({offset + b.blocks.size(), prime_radix(size), gen, size});
  for (auto& blk : cyclic_set_blocks(gen, size)) b.blocks.push_back(std::move(blk));
}

std::vector<IndexVector> all_indices(const std::vector<Block>& blocks) {
  std::vector<IndexVector> out;
  IndexVector iv(blocks.size(), 0);
  for (;;) {
    out.push_back(iv);
    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      if (++iv[b] < blocks[b].size()) break;
      iv[b] = 0;
    }
    if (b == blocks.size()) return out;
  }
}

Matrix block_product(const std::vector<Block>& blocks, const IndexVector& iv, const Matrix& identity) {
  Matrix g = identity;
  for (std::size_t i = 0; i < blocks.size(); ++i) g = g * blocks[i][iv[i]];
  return g;
}

void build_base(const QuadraticSpace& V, Family fam, std::size_t offset, LevelBuild& out) {
  const GaloisField& F = *V.field();
  const std::uint64_t q = V.q();
  const Matrix I = Matrix::identity(V.field(), V.dim());
  if (V.dim() == 1) {
    if (fam == Family::O) out.blocks.push_back({I, -I});
  } else if (V.kind() == Kind::Minus) {
    std::optional<Matrix> c;
    for (std::uint64_t key = 0; key < ipow(q, 4) && !c; ++key) {
      const Vec s = vec_from_key(key, q, 4);
      Matrix g(V.field(), 2);
      g.at(0, 0) = s[0], g.at(0, 1) = s[1], g.at(1, 0) = s[2], g.at(1, 1) = s[3];
      if (g.det() == 1 && V.is_isometry(g) && order_of(g) == q + 1) c = g;
    }
    if (!c) throw Error(ErrorCode::ConstructionMismatch, "no cyclic generator of SO2-");
    if (fam == Family::Omega)
      push_cyclic(out, offset, *c * *c, (q + 1) / 2);
    else
      push_cyclic(out, offset, *c, q + 1);
    if (fam == Family::O) out.blocks.push_back({I, V.reflection(V.basis_vector(V.aniso_index(0)))});
  } else {
    const Matrix c = levi_scalar(V, F.primitive());
    if (fam == Family::Omega)
      push_cyclic(out, offset, c * c, (q - 1) / 2);
    else
      push_cyclic(out, offset, c, q - 1);
    if (fam == Family::O) {
      Vec v(2, 0);
      v[V.e_index(0)] = 1;
      v[V.f_index(0)] = F.neg(1);
      out.blocks.push_back({I, V.reflection(v)});
    }
  }
  out.plan->base = true;
  out.plan->base_blocks = out.blocks.size();
  for (const auto& iv : all_indices(out.blocks)) {
    const Matrix g = block_product(out.blocks, iv, I);
    if (!out.plan->base_table.emplace(g.key(), iv).second)
      throw Error(ErrorCode::ConstructionMismatch, "base blocks repeat a product");
  }
}

// Elements of the family mapping e_0 to every singular point, one block.
std::vector<Matrix> orbit_transversal(const QuadraticSpace& V, Family fam, std::uint64_t seed) {
  const PointTable P(V);
  RandomElements walk(V, fam, seed);
  std::vector<Matrix> gens;
  for (int i = 0; i < 6; ++i) gens.push_back(walk.next());
  std::vector<std::optional<Matrix>> reach(P.size());
  const int start = P.index_of(V.basis_vector(V.e_index(0)));
  reach[start] = Matrix::identity(V.field(), V.dim());
  std::deque<int> queue = {start};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const int y = P.image(g, x);
      if (!reach[y]) {
        reach[y] = g * *reach[x];
        queue.push_back(y);
      }
    }
  }
  std::vector<Matrix> out;
  for (auto& r : reach) {
    if (!r) throw Error(ErrorCode::ConstructionMismatch, "family is not transitive on singular points");
    out.push_back(*r);
  }
  return out;
}

int preferred_d(const QuadraticSpace& V) {
  switch (V.kind()) {
    case Kind::Minus: return V.witt_index();
    case Kind::Plus: return V.dim() == 4 ? 2 : 1;
    case Kind::Odd: return 1;
  }
  return 1;
}

// Generator of B' on P(W0) inside the family, or nullopt.
std::optional<Matrix> bprime_generator(const QuadraticSpace& V, Family fam, int d) {
  const GaloisField& F = *V.field();
  Matrix b = levi_diag(V, singer_generator(static_cast<unsigned>(d), V.field()));
  if (V.in_family(b, fam)) return b;
  if (fam != Family::Omega) return std::nullopt;
  if (d % 2) {
    Matrix s = Matrix::identity(V.field(), V.dim());
    for (int i = 0; i < d; ++i) {
      s.at(V.e_index(i), V.e_index(i)) = V.nu();
      s.at(V.f_index(i), V.f_index(i)) = F.inv(V.nu());
    }
    b = b * s;
  } else {
    std::vector<int> coords;
    for (int i = 0; i < V.dim(); ++i) {
      bool pair = false;
      for (int t = 0; t < d; ++t) pair = pair || i == V.e_index(t) || i == V.f_index(t);
      if (!pair) coords.push_back(i);
    }
    auto z = nonsquare_pair(V, coords);
    if (!z) return std::nullopt;
    b = b * *z;
  }
  if (!V.in_family(b, fam)) return std::nullopt;
  return b;
}

struct Transversal {
  std::vector<Block> blocks;
  std::unordered_map<std::uint64_t, LevelPlan::TransversalEntry> table;
  LevelReport report;
  std::vector<std::string> notes;
};

bool fill_table(const QuadraticSpace& V, Transversal& t, std::uint64_t expected) {
  const Matrix I = Matrix::identity(V.field(), V.dim());
  const Vec e0 = V.basis_vector(V.e_index(0));
  t.table.clear();
  for (const auto& iv : all_indices(t.blocks)) {
    const Matrix g = block_product(t.blocks, iv, I);
    const Vec p = normalize_point(*V.field(), g * e0);
    if (V.Q(p) != 0) return false;
    if (!t.table.emplace(vec_key(p, V.q()), LevelPlan::TransversalEntry{iv, g.inverse()}).second) return false;
  }
  return t.table.size() == expected;
}

std::vector<Matrix> core_candidates(const QuadraticSpace& V, Family fam, const Table1Pair& t1) {
  std::vector<Matrix> cores;
  for (const auto* x : {&t1.a, &t1.b}) {
    const std::uint64_t ord = order_of(*x);
    for (std::uint64_t k = 1; k < ord; ++k)
      if (ord % k == 0) cores.push_back(x->pow(static_cast<std::int64_t>(k)));
  }
  std::erase_if(cores, [&](const Matrix& x) { return x.is_identity() || !V.in_family(x, fam); });
  return cores;
}

std::uint64_t orbit_members(const QuadraticSpace& V, const Matrix& a, int d) {
  const Subspace W0 = base_subspace(V, d);
  std::unordered_set<std::string> seen;
  Matrix g = Matrix::identity(V.field(), V.dim());
  const auto ord = order_of(a);
  for (std::uint64_t i = 0; i < ord; ++i, g = g * a) seen.insert(W0.image(g).key());
  return seen.size();
}

Transversal build_transversal(const QuadraticSpace& V, Family fam, const CanonicalOptions& opt) {
  Transversal t;
  const std::uint64_t N = V.singular_point_count_formula();
  GroupDescriptor d1{Family::O, V.kind(), V.q(), V.dim(), 0};
  const Table1Pair t1 = table1_generators_unchecked(d1);
  const auto cores = core_candidates(V, fam, t1);
  FallbackOptions fo;
  fo.seed = opt.seed;
  fo.attempts_per_factor = opt.attempts_per_factor;
  fo.hints = t1.extras;
  fo.hints.insert(fo.hints.end(), cores.begin(), cores.end());

  t.report.n = V.dim();
  t.report.literal_a_in_group = V.in_family(t1.a, fam);
  std::vector<int> ds = {preferred_d(V)};
  if (ds[0] != 1) ds.push_back(1);
  for (int d : ds) {
    const auto b = bprime_generator(V, fam, d);
    if (!b) {
      t.notes.push_back("n=" + std::to_string(V.dim()) + ": no B' generator in the family for d=" + std::to_string(d));
      continue;
    }
    FallbackResult fr;
    try {
      fr = fallback_search(V, fam, d, cores, fo);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotFound) throw;
      t.notes.push_back("n=" + std::to_string(V.dim()) + ", d=" + std::to_string(d) + ": " + e.what());
      continue;
    }
    const std::uint64_t q = V.q();
    const std::uint64_t bsize = (ipow(q, static_cast<unsigned>(d)) - 1) / (q - 1);
    t.blocks.clear();
    for (const auto& f : fr.factors)
      for (auto& blk : cyclic_set_blocks(f.gen, f.size)) t.blocks.push_back(std::move(blk));
    for (auto& blk : cyclic_set_blocks(*b, bsize)) t.blocks.push_back(std::move(blk));
    if (!fill_table(V, t, N)) {
      t.notes.push_back("n=" + std::to_string(V.dim()) + ", d=" + std::to_string(d) + ": transversal not sharp");
      continue;
    }
    auto& r = t.report;
    r.d = d;
    r.members = N / bsize;
    r.b_size = bsize;
    for (const auto& f : fr.factors) r.a_factor_sizes.push_back(f.size);
    r.literal_a_orbit = orbit_members(V, t1.a, d);
    r.literal_a_sharp = r.literal_a_in_group && r.literal_a_orbit == r.members && t1.order_a == r.members;
    if (r.literal_a_sharp && fr.factors.size() == 1 && fr.core_index == 0) {
      r.note = "literal a is sharply transitive";
    } else {
      r.note = "literal a: order " + std::to_string(t1.order_a) + ", " + std::to_string(r.literal_a_orbit) +
               " distinct W0-images of " + std::to_string(r.members) + " needed";
      if (!r.literal_a_in_group) r.note += ", not in the family";
      r.note += "; factored set found by search";
    }
    return t;
  }
  t.blocks = {orbit_transversal(V, fam, opt.seed)};
  if (!fill_table(V, t, N)) throw Error(ErrorCode::ConstructionMismatch, "orbit transversal is not sharp");
  t.report.d = 1;
  t.report.members = N;
  t.report.a_factor_sizes = {N};
  t.report.note = "no factored transversal found; one unrefined block of size " + std::to_string(N);
  t.notes.push_back("n=" + std::to_string(V.dim()) + ": " + t.report.note + " (signature not minimal)");
  return t;
}

LevelBuild build_level(const QuadraticSpace& V, Family fam, std::size_t offset, Context& ctx) {
  LevelBuild out;
  out.plan = std::make_shared<LevelPlan>();
  out.plan->space = V;
  out.plan->family = fam;
  out.plan->first_block = offset;
  if (is_base(V)) {
    build_base(V, fam, offset, out);
    return out;
  }
  const GaloisField& F = *V.field();
  Transversal tr = build_transversal(V, fam, ctx.opt);
  ctx.reports.push_back(tr.report);
  ctx.notes.insert(ctx.notes.end(), tr.notes.begin(), tr.notes.end());
  out.blocks = std::move(tr.blocks);
  out.plan->transversal_blocks = out.blocks.size();
  out.plan->transversal = std::move(tr.table);

  out.plan->siegel_coords = V.complement_coords();
  out.plan->field_degree = F.degree();
  for (int c : out.plan->siegel_coords)
    for (unsigned b = 0; b < F.degree(); ++b) {
      Block blk;
      for (Code k = 0; k < F.p(); ++k) {
        std::vector<Code> co(F.degree(), 0);
        co[b] = k;
        Vec u(V.dim(), 0);
        u[c] = F.from_coeffs(co);
        blk.push_back(V.siegel(u, 0));
      }
      out.blocks.push_back(std::move(blk));
    }

  const Code l0 = F.primitive();
  Matrix c = levi_scalar(V, l0);
  std::uint64_t size = V.q() - 1;
  unsigned step = 1;
  if (fam == Family::Omega) {
    auto z = nonsquare_pair(V, V.complement_coords());
    if (z) {
      c = c * *z;
    } else {
      c = c * c;
      size /= 2;
      step = 2;
    }
  }
  if (!V.in_family(c, fam)) throw Error(ErrorCode::ConstructionMismatch, "Levi generator outside the family");
  out.plan->levi_gen = c;
  out.plan->levi_size = size;
  out.plan->levi_step = step;
  out.plan->lambda0 = l0;
  out.plan->levi_radix = prime_radix(size);
  push_cyclic(out, offset, c, size);

  LevelBuild sub = build_level(V.complement(), fam, offset + out.blocks.size(), ctx);
  for (auto& blk : sub.blocks) {
    for (auto& g : blk) g = V.embed_complement(g);
    out.blocks.push_back(std::move(blk));
  }
  for (auto s : sub.segs) {
    s.gen = V.embed_complement(s.gen);
    out.segs.push_back(std::move(s));
  }
  out.plan->sub = sub.plan;
  return out;
}

struct Built {
  LogSignature ls;
  std::vector<LevelReport> reports;
};

std::shared_ptr<const Built> build_canonical(const GroupDescriptor& desc, const CanonicalOptions& opt) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Built>> cache;
  const std::string key =
      to_json(desc).dump() + "/" + std::to_string(opt.seed) + "/" + std::to_string(opt.attempts_per_factor);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<Built>();
  LogSignature& ls = built->ls;
  ls.group = desc;
  ls.claimed_order = group_order(desc);
  if (desc.projective()) {
    GroupDescriptor lift = desc;
    lift.family = desc.lift_family();
    ls = project_ls(build_canonical(lift, opt)->ls);
    built->reports = build_canonical(lift, opt)->reports;
  } else if (desc.family == Family::GL) {
    ls = gl_ls(field_for(desc.q), desc.n);
  } else if (desc.family == Family::Parabolic) {
    ls = parabolic_ls(space_for(desc), desc.k);
  } else {
    Context ctx{opt, {}, {}};
    LevelBuild lb = build_level(space_for(desc), desc.family, 0, ctx);
    ls.blocks = std::move(lb.blocks);
    ls.segments = std::move(lb.segs);
    ls.notes = std::move(ctx.notes);
    ls.decoder = std::make_shared<detail::LevelDecoder>(lb.plan, ls.blocks.size());
    built->reports = std::move(ctx.reports);
    std::uint64_t prod = 1;
    for (const auto& b : ls.blocks) prod *= b.size();
    if (prod != ls.claimed_order)
      throw Error(ErrorCode::ConstructionMismatch, "block sizes multiply to " + std::to_string(prod) + ", |G| = " +
                                                       std::to_string(ls.claimed_order));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, built);
  return built;
}

std::vector<Block> gl_blocks(const FieldPtr& F, int k) {
  std::vector<Block> out;
  if (k == 0) return out;
  const std::uint64_t q = F->size();
  const Matrix I = Matrix::identity(F, k);
  for (auto& b : cyclic_set_blocks(singer_generator(static_cast<unsigned>(k), F), ipow(q, k) - 1))
    out.push_back(std::move(b));
  for (int j = 1; j < k; ++j)
    for (unsigned b = 0; b < F->degree(); ++b) {
      Block blk;
      for (Code c = 0; c < F->p(); ++c) {
        std::vector<Code> co(F->degree(), 0);
        co[b] = c;
        Matrix u = I;
        u.at(0, j) = F->from_coeffs(co);
        blk.push_back(u);
      }
      out.push_back(std::move(blk));
    }
  for (auto& blk : gl_blocks(F, k - 1)) {
    for (auto& g : blk) {
      Matrix big = I;
      for (int r = 0; r < k - 1; ++r)
        for (int c = 0; c < k - 1; ++c) big.at(r + 1, c + 1) = g(r, c);
      g = big;
    }
    out.push_back(std::move(blk));
  }
  return out;
}

constexpr std::uint64_t kTableLimit = 250000;

}  // namespace

LogSignature canonical_ls(const GroupDescriptor& desc, const CanonicalOptions& opt) {
  validate(desc);
  return build_canonical(desc, opt)->ls;
}

std::vector<LevelReport> canonical_level_reports(const GroupDescriptor& desc, const CanonicalOptions& opt) {
  validate(desc);
  return build_canonical(desc, opt)->reports;
}

LogSignature gl_ls(const FieldPtr& field, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "GL needs k >= 1");
  LogSignature ls;
  ls.group = {Family::GL, Kind::Plus, field->size(), k, 0};
  ls.claimed_order = group_order(ls.group);
  ls.blocks = gl_blocks(field, k);
  if (ls.claimed_order <= kTableLimit) ls.decoder = std::make_shared<detail::TableDecoder>(ls);
  return ls;
}

LogSignature parabolic_ls(const QuadraticSpace& V, int k) {
  if (k < 1 || k > V.witt_index()) throw Error(ErrorCode::InvalidArgument, "k must lie in [1, Witt index]");
  const GaloisField& F = *V.field();
  const int n = V.dim();
  LogSignature ls;
  ls.group = {Family::Parabolic, V.kind(), V.q(), n, k};
  ls.claimed_order = group_order(ls.group);

  std::vector<int> rest;  // W' coordinates in the order of the smaller canonical space
  for (int i = k; i < V.witt_index(); ++i) rest.push_back(V.e_index(i));
  for (int i = k; i < V.witt_index(); ++i) rest.push_back(V.f_index(i));
  for (int i = V.aniso_index(0); i < n; ++i) rest.push_back(i);

  auto radical_block = [&](int t, int coord, unsigned b) {
    Block blk;
    for (Code c = 0; c < F.p(); ++c) {
      std::vector<Code> co(F.degree(), 0);
      co[b] = c;
      Vec u(n, 0);
      u[coord] = F.from_coeffs(co);
      blk.push_back(V.siegel(u, t));
    }
    return blk;
  };
  for (int i = 0; i < k; ++i)
    for (int c : rest)
      for (unsigned b = 0; b < F.degree(); ++b) ls.blocks.push_back(radical_block(i, c, b));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (unsigned b = 0; b < F.degree(); ++b) ls.blocks.push_back(radical_block(i, V.e_index(j), b));

  for (auto& blk : gl_blocks(V.field(), k)) {
    for (auto& g : blk) g = levi_diag(V, g);
    ls.blocks.push_back(std::move(blk));
  }
  if (!rest.empty()) {
    const LogSignature sub = canonical_ls({Family::O, V.kind(), V.q(), static_cast<int>(rest.size()), 0});
    for (const auto& blk : sub.blocks) {
      Block b2;
      for (const auto& g : blk) {
        Matrix big = Matrix::identity(V.field(), n);
        for (std::size_t r = 0; r < rest.size(); ++r)
          for (std::size_t c = 0; c < rest.size(); ++c)
            big.at(rest[r], rest[c]) = g(static_cast<int>(r), static_cast<int>(c));
        b2.push_back(std::move(big));
      }
      ls.blocks.push_back(std::move(b2));
    }
  }
  if (ls.claimed_order <= kTableLimit) ls.decoder = std::make_shared<detail::TableDecoder>(ls);
  return ls;
}

// ---------------------------------------------------------------------------
// Spread check for the table's constructions

SpreadCheck spread_check(Kind kind, std::uint64_t q, int m, const CanonicalOptions& opt) {
  SpreadCheck r;
  r.kind = kind;
  r.q = q;
  r.m = m;
  const GroupDescriptor desc{Family::O, kind, q, kind == Kind::Odd ? 2 * m + 1 : 2 * m, 0};
  validate(desc);
  const QuadraticSpace V = space_for(desc);
  const auto pts = V.singular_points();
  r.points = pts.size();
  r.d = kind == Kind::Minus ? m - 1 : m;
  if (pts.empty() || r.d == 0) {
    r.ok = pts.empty();
    r.partition.ok = r.ok;
    r.a_sharp = r.b_sharp = r.ok;
    r.note = "no singular points; the A and B' blocks are trivial";
    return r;
  }
  const Table1Pair t1 = table1_generators_unchecked(desc);
  const auto cores = core_candidates(V, Family::O, t1);
  r.literal_a_orbit = orbit_members(V, t1.a, r.d);
  const std::uint64_t ppm = (ipow(q, static_cast<unsigned>(r.d)) - 1) / (q - 1);
  const std::uint64_t members = r.points / ppm;
  r.literal_a_sharp = r.literal_a_orbit == members && t1.order_a == members;
  r.b_size = ppm;

  FallbackOptions fo;
  fo.seed = opt.seed;
  fo.attempts_per_factor = opt.attempts_per_factor;
  fo.hints = t1.extras;
  fo.hints.insert(fo.hints.end(), cores.begin(), cores.end());
  FallbackResult fr;
  try {
    fr = fallback_search(V, Family::O, r.d, cores, fo);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFound) throw;
    const SpreadSearch s = search_singular_spread(V, r.d, 2000000);
    r.note = "no sharply transitive A found; ";
    if (s.spread)
      r.note += "a spread of totally singular " + std::to_string(r.d) + "-spaces exists but no factored A was found";
    else if (s.exhausted)
      r.note += "no spread of totally singular " + std::to_string(r.d) + "-spaces exists (exact cover exhausted over " +
                std::to_string(s.candidates) + " subspaces, " + std::to_string(s.nodes) + " nodes)";
    else
      r.note += "spread search hit its node budget (" + std::to_string(s.nodes) + " nodes)";
    r.partition.ok = false;
    r.partition.points = r.points;
    r.partition.violation = r.note;
    return r;
  }
  const Matrix I = Matrix::identity(V.field(), V.dim());
  std::vector<Block> ablocks;
  for (const auto& f : fr.factors) {
    ablocks.push_back({});
    Matrix g = I;
    for (std::uint64_t j = 0; j < f.size; ++j, g = g * f.gen) ablocks.back().push_back(g);
    r.a_factor_sizes.push_back(f.size);
  }
  std::vector<Matrix> A;
  for (const auto& iv : all_indices(ablocks)) A.push_back(block_product(ablocks, iv, I));
  if (ablocks.empty()) A = {I};
  r.a_size = A.size();
  const Subspace W0 = base_subspace(V, r.d);
  try {
    const OrbitSpread os = orbit_partial_spread(A, W0);
    r.a_sharp = os.sharp;
    r.partition = verify_partition(os.spread, pts);
  } catch (const Error& e) {
    r.partition.ok = false;
    r.partition.violation = e.what();
  }
  const auto b = bprime_generator(V, Family::O, r.d);
  std::unordered_set<std::uint64_t> seen;
  Matrix g = I;
  for (std::uint64_t j = 0; j < ppm; ++j, g = g * *b) {
    const Vec p = normalize_point(*V.field(), g * V.basis_vector(V.e_index(0)));
    if (W0.contains(p)) seen.insert(vec_key(p, q));
  }
  r.b_sharp = seen.size() == ppm;
  r.ok = r.partition.ok && r.a_sharp && r.b_sharp;
  if (r.literal_a_sharp && fr.factors.size() == 1 && fr.core_index == 0) {
    r.note = "literal a is sharply transitive on the spread";
  } else {
    r.note = "literal a: order " + std::to_string(t1.order_a) + " (expected " + std::to_string(t1.expected_a) + "), " +
             std::to_string(r.literal_a_orbit) + " distinct W0-images of " + std::to_string(members) +
             "; fallback A with factor sizes";
    for (auto s : r.a_factor_sizes) r.note += " " + std::to_string(s);
  }
  return r;
}

}  // namespace olsig
