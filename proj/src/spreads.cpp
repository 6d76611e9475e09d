#include "olsig/spreads.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "olsig/error.hpp"

namespace olsig {

Subspace::Subspace(FieldPtr field, int n, const std::vector<Vec>& spanning) : field_(std::move(field)), n_(n) {
  for (const auto& v : spanning)
    if (static_cast<int>(v.size()) != n) throw Error(ErrorCode::DimensionMismatch, "spanning vector length");
  basis_ = rref(*field_, spanning);
}

bool Subspace::contains(const Vec& v) const {
  std::vector<Vec> rows = basis_;
  rows.push_back(v);
  return rank_of_rows(*field_, rows) == dim();
}

int Subspace::intersection_dim(const Subspace& other) const {
  std::vector<Vec> rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return dim() + other.dim() - rank_of_rows(*field_, rows);
}

Subspace Subspace::image(const Matrix& g) const {
  std::vector<Vec> rows;
  rows.reserve(basis_.size());
  for (const auto& b : basis_) rows.push_back(g * b);
  return Subspace(field_, n_, rows);
}

std::vector<std::uint64_t> Subspace::point_keys() const {
  const GaloisField& F = *field_;
  const std::uint64_t q = F.size();
  const int d = dim();
  std::vector<std::uint64_t> keys;
  const std::uint64_t total = ipow(q, static_cast<unsigned>(d));
  for (std::uint64_t c = 1; c < total; ++c) {
    Vec coeff = vec_from_key(c, q, d);
    // only combinations whose first nonzero coefficient is 1 give distinct points
    const auto lead = std::find_if(coeff.begin(), coeff.end(), [](Code x) { return x != 0; });
    if (*lead != 1) continue;
    Vec v(n_, 0);
    for (int i = 0; i < d; ++i)
      if (coeff[i])
        for (int k = 0; k < n_; ++k) v[k] = F.add(v[k], F.mul(coeff[i], basis_[i][k]));
    keys.push_back(vec_key(normalize_point(F, v), q));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::string Subspace::key() const {
  std::string s;
  for (const auto& row : basis_) {
    for (Code x : row) {
      s += std::to_string(x);
      s += ',';
    }
    s += ';';
  }
  return s;
}

namespace {

PartialSpread field_lines(const FieldTower& tower, std::uint64_t exponent_step) {
  const ExtensionBasis B = tower_basis(tower);
  const int n = static_cast<int>(2 * tower.m());
  std::vector<Vec> w;
  for (Code c = 0; c < tower.mid()->size(); ++c) w.push_back(B.coords(tower.embed(Level::Mid, c)));
  const Subspace W(tower.base(), n, w);
  const std::uint64_t qm = ipow(tower.q(), tower.m());
  const auto& E = *tower.top();
  const Code step = E.pow(tower.alpha(), exponent_step);
  PartialSpread S;
  Code s = 1;
  for (std::uint64_t i = 0; i <= qm; ++i) {
    S.members.push_back(W.image(B.mult_matrix(s)));
    s = E.mul(s, step);
  }
  return S;
}

}  // namespace

PartialSpread classical_spread(const FieldTower& tower) { return field_lines(tower, 1); }

PartialSpread classical_spread_literal(const FieldTower& tower) {
  return field_lines(tower, ipow(tower.q(), tower.m()) - 1);
}

OrbitSpread orbit_partial_spread(const std::vector<Matrix>& elements, const Subspace& W0) {
  OrbitSpread out;
  std::set<std::string> seen;
  for (const auto& g : elements) {
    Subspace img = W0.image(g);
    if (seen.insert(img.key()).second) out.spread.members.push_back(std::move(img));
  }
  const auto& M = out.spread.members;
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j)
      if (M[i].intersection_dim(M[j]) != 0)
        throw Error(ErrorCode::NotAPartialSpread,
                    "members " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
  out.sharp = M.size() == elements.size();
  return out;
}

PartitionReport verify_partition(const PartialSpread& S, const std::vector<Vec>& points) {
  PartitionReport r;
  r.members = S.members.size();
  if (S.members.empty()) {
    r.points = points.size();
    r.ok = points.empty();
    if (!r.ok) r.violation = "no members but points to cover";
    return r;
  }
  const FieldPtr& F = S.members[0].field();
  const std::uint64_t q = F->size();
  const int n = S.members[0].ambient();
  std::unordered_map<std::uint64_t, int> hits;
  bool all_points = points.empty();
  if (all_points) {
    const std::uint64_t total = ipow(q, static_cast<unsigned>(n));
    for (std::uint64_t k = 1; k < total; ++k) {
      const Vec v = vec_from_key(k, q, n);
      if (std::find_if(v.begin(), v.end(), [](Code x) { return x; }) != v.end() &&
          *std::find_if(v.begin(), v.end(), [](Code x) { return x; }) == 1)
        hits[k] = 0;
    }
  } else {
    for (const auto& p : points) hits[vec_key(normalize_point(*F, p), q)] = 0;
  }
  r.points = hits.size();
  std::optional<std::uint64_t> share;
  for (std::size_t i = 0; i < S.members.size(); ++i) {
    std::uint64_t mine = 0;
    for (auto k : S.members[i].point_keys()) {
      auto it = hits.find(k);
      if (it == hits.end()) continue;
      ++mine;
      if (++it->second == 2 && r.ok) {
        r.ok = false;
        r.violation = "point " + std::to_string(k) + " lies in member " + std::to_string(i) + " and an earlier member";
      }
    }
    if (mine == 0 && r.ok) {
      r.ok = false;
      r.violation = "member " + std::to_string(i) + " contains no target point";
    }
    if (share && *share != mine && r.ok) {
      r.ok = false;
      r.violation = "member " + std::to_string(i) + " has " + std::to_string(mine) + " target points, expected " +
                    std::to_string(*share);
    }
    if (!share) share = mine;
  }
  for (const auto& [k, c] : hits) {
    if (c > 0) ++r.covered;
  }
  if (r.ok && r.covered != r.points) {
    r.ok = false;
    for (const auto& [k, c] : hits)
      if (c == 0) {
        r.violation = "point " + std::to_string(k) + " is not covered";
        break;
      }
  }
  r.points_per_member = share.value_or(0);
  return r;
}

std::vector<Subspace> totally_singular_subspaces(const QuadraticSpace& space, int d) {
  const auto pts = space.singular_points();
  const FieldPtr& F = space.field();
  const int n = space.dim();
  std::map<std::string, Subspace> cur;
  for (const auto& p : pts) {
    Subspace s(F, n, {p});
    cur.emplace(s.key(), s);
  }
  for (int k = 1; k < d; ++k) {
    std::map<std::string, Subspace> next;
    for (const auto& [key, s] : cur) {
      for (const auto& p : pts) {
        bool perp = true;
        for (const auto& b : s.basis())
          if (space.f(b, p)) {
            perp = false;
            break;
          }
        if (!perp || s.contains(p)) continue;
        std::vector<Vec> rows = s.basis();
        rows.push_back(p);
        Subspace t(F, n, rows);
        next.emplace(t.key(), std::move(t));
      }
    }
    cur = std::move(next);
  }
  std::vector<Subspace> out;
  for (auto& [k, s] : cur) out.push_back(std::move(s));
  return out;
}

namespace {

// Algorithm X over point/candidate incidence with counters instead of links.
class ExactCover {
 public:
  ExactCover(std::size_t points, std::vector<std::vector<int>> sets, std::uint64_t budget)
      : sets_(std::move(sets)), budget_(budget), by_point_(points), avail_(points, 0),
        covered_(points, false), blocked_(sets_.size(), 0) {
    for (std::size_t c = 0; c < sets_.size(); ++c)
      for (int p : sets_[c]) {
        by_point_[p].push_back(static_cast<int>(c));
        ++avail_[p];
      }
  }

  bool run() { return search(); }
  bool out_of_budget() const { return out_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<int>& solution() const { return chosen_; }

 private:
  bool search() {
    if (++nodes_ > budget_) {
      out_ = true;
      return false;
    }
    int best = -1;
    for (std::size_t p = 0; p < covered_.size(); ++p) {
      if (covered_[p]) continue;
      if (best < 0 || avail_[p] < avail_[best]) best = static_cast<int>(p);
    }
    if (best < 0) return true;
    if (avail_[best] == 0) return false;
    for (int c : by_point_[best]) {
      if (blocked_[c]) continue;
      std::vector<int> newly;
      select(c, newly);
      chosen_.push_back(c);
      if (search()) return true;
      chosen_.pop_back();
      unselect(c, newly);
      if (out_) return false;
    }
    return false;
  }

  void block(int c) {
    if (blocked_[c]++ == 0)
      for (int p : sets_[c]) --avail_[p];
  }
  void unblock(int c) {
    if (--blocked_[c] == 0)
      for (int p : sets_[c]) ++avail_[p];
  }
  void select(int c, std::vector<int>& newly) {
    for (int p : sets_[c]) {
      covered_[p] = true;
      for (int o : by_point_[p]) {
        block(o);
        newly.push_back(o);
      }
    }
  }
  void unselect(int c, const std::vector<int>& newly) {
    for (auto it = newly.rbegin(); it != newly.rend(); ++it) unblock(*it);
    for (int p : sets_[c]) covered_[p] = false;
  }

  std::vector<std::vector<int>> sets_;
  std::uint64_t budget_;
  std::vector<std::vector<int>> by_point_;
  std::vector<int> avail_;
  std::vector<bool> covered_;
  std::vector<int> blocked_;
  std::vector<int> chosen_;
  std::uint64_t nodes_ = 0;
  bool out_ = false;
};

}  // namespace

SpreadSearch search_singular_spread(const QuadraticSpace& space, int d, std::uint64_t node_budget) {
  SpreadSearch out;
  const auto pts = space.singular_points();
  std::unordered_map<std::uint64_t, int> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[vec_key(pts[i], space.q())] = static_cast<int>(i);
  const auto cands = totally_singular_subspaces(space, d);
  out.candidates = cands.size();
  std::vector<std::vector<int>> sets;
  for (const auto& c : cands) {
    std::vector<int> s;
    for (auto k : c.point_keys()) s.push_back(index.at(k));
    sets.push_back(std::move(s));
  }
  ExactCover xc(pts.size(), std::move(sets), node_budget);
  const bool found = xc.run();
  out.nodes = xc.nodes();
  out.exhausted = !xc.out_of_budget();
  if (found) {
    PartialSpread S;
    for (int c : xc.solution()) S.members.push_back(cands[c]);
    out.spread = std::move(S);
  }
  return out;
}

nlohmann::json to_json(const Subspace& s) { return s.basis(); }

nlohmann::json to_json(const PartialSpread& s) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& m : s.members) a.push_back(to_json(m));
  return a;
}

nlohmann::json to_json(const PartitionReport& r) {
  return {{"ok", r.ok},
          {"points", r.points},
          {"covered", r.covered},
          {"members", r.members},
          {"points_per_member", r.points_per_member},
          {"violation", r.violation}};
}

}  // namespace olsig
