#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "json.hpp"

namespace olsig {

using Code = std::uint32_t;       // element of a Galois field, base-p digits low degree first
using Poly = std::vector<Code>;   // polynomial over F_p, low degree first

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t ipow(std::uint64_t base, unsigned exp);

namespace poly {
Poly trim(Poly a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, Code p);
Poly powmod(Poly a, std::uint64_t e, const Poly& mod, Code p);
Poly gcd(Poly a, Poly b, Code p);
bool is_irreducible(const Poly& f, Code p);
/// Lexicographically smallest monic irreducible of degree d, coefficients compared
/// from the constant term upward.
Poly smallest_irreducible(Code p, unsigned d);
}  // namespace poly

/// F_{p^d} in the power basis of a fixed monic modulus. Elements are integer codes
/// c_0 + c_1 p + ... + c_{d-1} p^{d-1}.
class GaloisField {
 public:
  GaloisField(Code p, Poly modulus);

  Code p() const { return p_; }
  unsigned degree() const { return degree_; }
  Code size() const { return size_; }
  const Poly& modulus() const { return modulus_; }

  Code zero() const { return 0; }
  Code one() const { return 1; }

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t e) const;
  Code scale(Code a, Code c) const;  // c in F_p

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Code a) const;
  /// Smallest element of maximal order, "smallest" in low-degree-first lex order.
  Code primitive() const { return primitive_; }
  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Code a) const;
  Code exp(std::uint64_t k) const;
  bool is_square(Code a) const;

  std::vector<Code> coeffs(Code a) const;
  Code from_coeffs(const std::vector<Code>& c) const;
  /// Position of a in the low-degree-first lexicographic order.
  Code lex_rank(Code a) const;
  Code from_lex_rank(Code r) const;

 private:
  Code p_;
  unsigned degree_;
  Code size_;
  Poly modulus_;
  std::vector<Code> pw_;  // p^i
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
  Code primitive_ = 0;
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> mul_table_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Shared F_{p^d} built on the smallest irreducible modulus; cached per (p, d).
FieldPtr standard_field(Code p, unsigned d);

enum class Level { Base = 0, Mid = 1, Top = 2 };

/// Coefficient vector over F_p in the power basis of one tower level's modulus.
struct FieldElement {
  Level level = Level::Base;
  std::vector<Code> coeffs;

  bool operator==(const FieldElement&) const = default;
};

/// F_p < F_q < F_{q^m} < F_{q^{2m}} with q = p^e. Each level has its own smallest
/// irreducible modulus; the lower levels are embedded in the top field through
/// fixed roots of their moduli.
class FieldTower {
 public:
  FieldTower(Code p, unsigned e, unsigned m);

  Code p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return base_->size(); }

  const FieldPtr& field(Level level) const;
  const FieldPtr& base() const { return base_; }
  const FieldPtr& mid() const { return mid_; }
  const FieldPtr& top() const { return top_; }
  /// Primitive element of the top field.
  Code alpha() const { return alpha_; }

  /// Image of a level element in the top field.
  Code embed(Level level, Code x) const;
  /// Inverse of embed on the subfield image; throws if x is not in the subfield.
  Code restrict(Level level, Code x) const;
  bool in_subfield(Level level, Code x) const;

  Code bar(Code x) const;               // x^{q^m}
  Code trace_mid_to_base(Code x) const;  // top codes, x in F_{q^m}, result in F_q (top code)

  FieldElement element(Level level, Code c) const;
  Code code(const FieldElement& x) const;

  FieldElement add(const FieldElement& x, const FieldElement& y) const;
  FieldElement mul(const FieldElement& x, const FieldElement& y) const;
  FieldElement inv(const FieldElement& x) const;
  FieldElement pow(const FieldElement& x, std::uint64_t k) const;
  FieldElement trace_to_base(const FieldElement& x) const;
  FieldElement bar(const FieldElement& x) const;

  nlohmann::json to_json() const;

 private:
  void check_level(const FieldElement& x) const;

  Code p_;
  unsigned e_, m_;
  FieldPtr base_, mid_, top_;
  Code alpha_;
  std::vector<Code> base_embed_, mid_embed_;   // code -> top code
  std::vector<std::int64_t> base_restrict_, mid_restrict_;  // top code -> code or -1
};

FieldTower make_tower(Code p, unsigned e, unsigned m);

nlohmann::json to_json(const FieldElement& x);
FieldElement field_element_from_json(const nlohmann::json& j);

}  // namespace olsig
