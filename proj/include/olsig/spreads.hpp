#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "olsig/forms.hpp"
#include "olsig/matrix.hpp"

namespace olsig {

/// Subspace of F_q^n stored by its reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr field, int n, const std::vector<Vec>& spanning);

  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient() const { return n_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const FieldPtr& field() const { return field_; }

  bool contains(const Vec& v) const;
  int intersection_dim(const Subspace& other) const;
  Subspace image(const Matrix& g) const;
  /// Keys (vec_key) of the normalized points of P(W), sorted.
  std::vector<std::uint64_t> point_keys() const;
  /// Canonical text key; equal subspaces have equal keys.
  std::string key() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

 private:
  FieldPtr field_;
  int n_ = 0;
  std::vector<Vec> basis_;
};

struct PartialSpread {
  std::vector<Subspace> members;
};

struct PartitionReport {
  bool ok = true;
  std::uint64_t points = 0;          // |L|
  std::uint64_t covered = 0;         // points of L hit at least once
  std::uint64_t members = 0;
  std::uint64_t points_per_member = 0;
  std::string violation;             // first violation, empty when ok
};

/// The field spread W alpha^i, 0 <= i <= q^m, W = F_{q^m}, in power-basis coordinates.
PartialSpread classical_spread(const FieldTower& tower);
/// W alpha^{(q^m-1) i}, 0 <= i <= q^m, taken literally. For odd q the step lies in
/// a coset of order (q^m+1)/2 modulo F_{q^m}^*, so every member appears twice.
PartialSpread classical_spread_literal(const FieldTower& tower);

struct OrbitSpread {
  PartialSpread spread;
  bool sharp = false;  // |orbit| == |A|
};

/// Orbit of W0 under the listed elements, deduplicated in first-seen order.
/// Throws NotAPartialSpread with a witness pair when two members meet.
OrbitSpread orbit_partial_spread(const std::vector<Matrix>& elements, const Subspace& W0);

/// Does S partition the given points (each in exactly one member, equal shares)?
/// When points is empty the members are checked to cover all of P(V).
PartitionReport verify_partition(const PartialSpread& S, const std::vector<Vec>& points);

/// Totally singular subspaces of dimension d, sorted by key.
std::vector<Subspace> totally_singular_subspaces(const QuadraticSpace& space, int d);

struct SpreadSearch {
  std::optional<PartialSpread> spread;
  bool exhausted = false;  // search space fully explored
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
};

/// Exact-cover search for a set of totally singular d-spaces partitioning the
/// singular points, bounded by a node budget.
SpreadSearch search_singular_spread(const QuadraticSpace& space, int d, std::uint64_t node_budget);

nlohmann::json to_json(const Subspace& s);
nlohmann::json to_json(const PartialSpread& s);
nlohmann::json to_json(const PartitionReport& r);

}  // namespace olsig
