#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "olsig/fields.hpp"

namespace olsig {

using Vec = std::vector<Code>;

/// Dense n x n matrix over F_q, row-major. Group elements act on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, int n);  // zero matrix

  static Matrix identity(FieldPtr field, int n);
  static Matrix scalar(FieldPtr field, int n, Code c);
  /// Matrix whose j-th column is cols[j].
  static Matrix from_columns(FieldPtr field, const std::vector<Vec>& cols);
  /// Block-diagonal sum.
  static Matrix direct_sum(const Matrix& a, const Matrix& b);

  int n() const { return n_; }
  const FieldPtr& field() const { return field_; }
  Code operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  Code& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<Code>& entries() const { return e_; }
  Vec column(int j) const;
  std::vector<Vec> entries_as_rows() const;

  Matrix operator*(const Matrix& b) const;
  Vec operator*(const Vec& v) const;
  Matrix operator-() const;
  bool operator==(const Matrix& b) const { return n_ == b.n_ && e_ == b.e_; }
  bool operator!=(const Matrix& b) const { return !(*this == b); }
  bool operator<(const Matrix& b) const { return e_ < b.e_; }

  bool is_identity() const;
  Matrix transpose() const;
  Matrix inverse() const;          // throws Singular
  Matrix transpose_inverse() const;
  Code det() const;
  int rank() const;
  Matrix pow(std::int64_t k) const;  // negative k uses the inverse
  /// Sub-block [r0, r0+rows) x [c0, c0+cols).
  Matrix block(int r0, int c0, int size) const;

  std::size_t hash() const;
  std::string key() const;  // compact byte string, usable as a map key

 private:
  FieldPtr field_;
  int n_ = 0;
  std::vector<Code> e_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

/// Rank of an arbitrary rows x cols matrix given as row vectors.
int rank_of_rows(const GaloisField& F, std::vector<Vec> rows);
/// Reduced row echelon form (nonzero rows only).
std::vector<Vec> rref(const GaloisField& F, std::vector<Vec> rows);
/// Solve A x = b for square nonsingular A; throws Singular.
Vec solve(const Matrix& a, const Vec& b);
/// Some solution of A x = b for any square A, or nullopt when b is outside the column space.
std::optional<Vec> solve_any(const Matrix& a, const Vec& b);
/// Basis (reduced echelon rows) of the column space of a.
std::vector<Vec> column_space(const Matrix& a);

/// F_{q^k} as an F_q-vector space with basis gamma^0..gamma^{k-1}.
class ExtensionBasis {
 public:
  /// ext: F_{p^{ek}}; base_embed maps F_q codes into ext; gamma generates ext over F_q.
  ExtensionBasis(FieldPtr base, FieldPtr ext, std::vector<Code> base_embed, Code gamma, unsigned k);

  unsigned k() const { return k_; }
  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  Code gamma() const { return gamma_; }
  Vec coords(Code x) const;
  Code element(const Vec& c) const;
  Code embed(Code c) const { return base_embed_.at(c); }
  /// Matrix of v -> s v.
  Matrix mult_matrix(Code s) const;

 private:
  FieldPtr base_, ext_;
  std::vector<Code> base_embed_;
  Code gamma_;
  unsigned k_;
  std::vector<Code> basis_;
  std::vector<std::uint32_t> coord_index_;  // ext code -> packed coordinates
};

/// Top field of the tower over F_q with basis alpha^0..alpha^{2m-1}.
ExtensionBasis tower_basis(const FieldTower& tower);
/// Matrix of T_s on V = F_{q^{2m}} in the alpha power basis; s must be nonzero.
Matrix mult_matrix(Code s, const FieldTower& tower);
/// k x k matrix over F_q of multiplicative order q^k - 1 (multiplication by a
/// primitive element of F_{q^k} in its power basis).
Matrix singer_generator(unsigned k, const FieldPtr& base);

/// Least t <= cap with g^t = I; nullopt past the cap. Throws Singular for singular g.
std::optional<std::uint64_t> element_order(const Matrix& g, std::uint64_t cap);

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const FieldPtr& field);

}  // namespace olsig
