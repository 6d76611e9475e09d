#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "json.hpp"
#include "olsig/fields.hpp"
#include "olsig/group.hpp"
#include "olsig/matrix.hpp"

namespace olsig {

/// Scales v so its first nonzero coordinate is 1. Throws on the zero vector.
Vec normalize_point(const GaloisField& F, Vec v);
/// Injective integer key of a vector over F_q (coordinate 0 most significant).
std::uint64_t vec_key(const Vec& v, std::uint64_t q);
Vec vec_from_key(std::uint64_t key, std::uint64_t q, int n);

struct PointClass {
  bool isotropic = false;
  bool singular = false;
};

/// A non-singular quadratic space over F_q. All group elements live in Witt
/// coordinates: basis e_1..e_r, f_1..f_r, then the anisotropic part, with
/// Q(e_i) = Q(f_i) = 0, f(e_i, f_j) = delta_ij, and anisotropic Gram diag(2, -2nu)
/// (minus) or [2] (odd).
class QuadraticSpace {
 public:
  QuadraticSpace() = default;
  /// Space built directly in Witt coordinates.
  static QuadraticSpace canonical(Kind kind, FieldPtr field, int n);
  /// Trace-form model on F_{q^{2m}} (minus/plus); the odd kind has no field model
  /// and is built canonically with n = 2m+1.
  static QuadraticSpace from_tower(Kind kind, const FieldTower& tower);

  Kind kind() const { return kind_; }
  const FieldPtr& field() const { return field_; }
  std::uint64_t q() const { return field_->size(); }
  int dim() const { return n_; }
  int witt_index() const { return r_; }
  Code nu() const { return nu_; }
  const Matrix& gram() const { return gram_; }

  int e_index(int i) const { return i; }
  int f_index(int i) const { return r_ + i; }
  int aniso_index(int i) const { return 2 * r_ + i; }
  Vec basis_vector(int i) const;

  bool has_model() const { return has_model_; }
  /// Gram matrix of f in the power basis 1, alpha, ..., alpha^{2m-1}.
  const Matrix& model_gram() const { return model_gram_; }
  /// Columns are the Witt basis vectors in power-basis coordinates.
  const Matrix& witt_to_model() const { return to_model_; }
  /// Converts a model-basis matrix into Witt coordinates.
  Matrix from_model(const Matrix& g) const;
  Vec vector_from_model(const Vec& v) const;
  Vec vector_to_model(const Vec& v) const { return to_model_ * v; }

  Code f(const Vec& u, const Vec& v) const;
  Code Q(const Vec& v) const;
  PointClass classify(const Vec& v) const;

  /// All singular points, normalized, sorted by key.
  std::vector<Vec> singular_points() const;
  std::uint64_t singular_point_count_formula() const;

  bool is_isometry(const Matrix& g) const;
  /// det == 1 required; true when the spinor norm of g is a square.
  bool spinor_norm_square(const Matrix& g) const;
  /// rank(I + g) even.
  bool even_rank_criterion(const Matrix& g) const;
  bool in_family(const Matrix& g, Family family) const;

  Matrix reflection(const Vec& v) const;
  /// Siegel map for the hyperbolic pair (e_t, f_t); u must be orthogonal to both.
  Matrix siegel(const Vec& u, int t = 0) const;

  /// The space <e_1, f_1>^perp in its own Witt coordinates (dimension n-2).
  QuadraticSpace complement() const;
  /// Coordinates of this space occupied by the complement, in complement order.
  std::vector<int> complement_coords() const;
  Matrix embed_complement(const Matrix& g) const;
  Matrix restrict_complement(const Matrix& g) const;

  nlohmann::json to_json() const;

 private:
  void finish_canonical();

  Kind kind_ = Kind::Minus;
  FieldPtr field_;
  int n_ = 0, r_ = 0;
  Code nu_ = 0, half_ = 0;
  Matrix gram_;
  bool has_model_ = false;
  Matrix model_gram_, to_model_, from_model_;
};

/// Smallest nonsquare of F_q in code order.
Code smallest_nonsquare(const GaloisField& F);

/// Exact order of the group from the standard formulas (O, SO, Omega, projective,
/// GL, maximal parabolic).
std::uint64_t group_order(const GroupDescriptor& d);
/// Whether -I lies in the lift group of d.
bool minus_identity_in(const GroupDescriptor& d);

}  // namespace olsig
