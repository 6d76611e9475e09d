#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "olsig/forms.hpp"
#include "olsig/group.hpp"
#include "olsig/matrix.hpp"
#include "olsig/spreads.hpp"

namespace olsig {

using IndexVector = std::vector<std::uint32_t>;
using Block = std::vector<Matrix>;

/// Counters filled in by decoders; used to bound decoding work in tests.
struct DecodeStats {
  std::uint64_t table_lookups = 0;
  std::uint64_t discrete_logs = 0;
  std::uint64_t levels = 0;
  std::uint64_t products = 0;
};

/// Inverse of the product map of one particular LS.
class Decoder {
 public:
  virtual ~Decoder() = default;
  /// Indices with g = product of the chosen block elements; throws NotInGroup.
  virtual IndexVector decode(const Matrix& g, DecodeStats* stats = nullptr) const = 0;
};

/// Consecutive blocks that together form the cyclic set {gen^i : i < size}.
struct CyclicSegment {
  std::size_t first_block = 0;
  std::vector<std::uint64_t> radix;  // block sizes
  Matrix gen;
  std::uint64_t size = 1;
};

struct LogSignature {
  GroupDescriptor group;
  std::uint64_t claimed_order = 0;
  std::vector<Block> blocks;
  std::shared_ptr<const Decoder> decoder;  // null when no tame decoder is known
  std::vector<std::string> notes;          // construction remarks for reports
  std::vector<CyclicSegment> segments;     // known cyclic segments

  std::uint64_t length() const;
  std::vector<std::uint64_t> block_sizes() const;
  /// Product of the indexed elements (first block leftmost).
  Matrix product(const IndexVector& iv) const;
  /// Canonical key: matrix key, or the smaller of g, -g for projective groups.
  std::string element_key(const Matrix& g) const;
};

struct LengthBound {
  std::uint64_t order = 1;
  std::uint64_t bound = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;  // (p_j, a_j)
};

LengthBound min_length_bound(std::uint64_t order);
/// Prime factors with multiplicity, ascending.
std::vector<std::uint64_t> prime_radix(std::uint64_t s);

/// Blocks {x^(d M_j) : d < r_j} for the mixed radix r_0 r_1 ... = s (primes ascending,
/// M_j = r_0 ... r_{j-1}). Their ordered product is {x^i : 0 <= i < s}.
std::vector<Block> cyclic_set_blocks(const Matrix& x, std::uint64_t s);
LogSignature cyclic_set_mls(const Matrix& x, std::uint64_t s);

/// Two-block LS [A, B]; throws InvalidArgument if A and B share a nonidentity
/// element or if some product repeats.
LogSignature semidirect_ls(const std::vector<Matrix>& A, const std::vector<Matrix>& B, const GroupDescriptor& group);

/// A cyclic set {gen^i : i < size}.
struct CyclicFactor {
  Matrix gen;
  std::uint64_t size = 1;
};

struct Table1Pair {
  Matrix a, b;
  std::uint64_t order_a = 0, order_b = 0;
  std::uint64_t expected_a = 0, expected_b = 0;
  std::vector<Matrix> extras;  // Frobenius-type isometries normalizing <a>
};

/// The literal generators a, b of the table for O/SO of each kind, in the Witt
/// coordinates of the canonical space. Throws ConstructionMismatch when a or b
/// is not an isometry of the expected order.
Table1Pair table1_generators(const GroupDescriptor& desc);
/// Same matrices without the assertion (for reports).
Table1Pair table1_generators_unchecked(const GroupDescriptor& desc);

struct FallbackOptions {
  std::uint64_t seed = 0x5eed;
  std::uint64_t attempts_per_factor = 20000;
  unsigned restarts = 1;
  std::vector<Matrix> hints;  // structured candidates tried before random ones
};

struct FallbackResult {
  std::vector<CyclicFactor> factors;  // LS order: the product f_0 f_1 ... acts on W0
  std::uint64_t core_size = 1;        // size of the factor seeded by a core element
  int core_index = -1;                // which core was used, -1 for none
  std::uint64_t attempts = 0;
};

/// Factored set A of elements of the family whose images of W0 = <e_1..e_d> are
/// pairwise disjoint and cover the singular points. Cores are tried in order as the
/// leftmost factor; the remaining factors have prime size. Throws NotFound.
FallbackResult fallback_search(const QuadraticSpace& space, Family family, int d, const std::vector<Matrix>& cores,
                               const FallbackOptions& opt = {});

/// Random element of the family by a walk over reflections.
class RandomElements {
 public:
  RandomElements(const QuadraticSpace& space, Family family, std::uint64_t seed);
  const Matrix& next();

 private:
  Vec random_anisotropic(int square_class);  // -1 any, 0 square Q, 1 nonsquare Q
  QuadraticSpace space_;
  Family family_;
  std::mt19937_64 rng_;
  Matrix cur_;
};

struct LevelReport {
  int n = 0;
  int d = 0;                  // dimension of W0
  std::uint64_t members = 0;  // spread size
  bool literal_a_in_group = false;
  bool literal_a_sharp = false;
  std::uint64_t literal_a_orbit = 0;
  std::vector<std::uint64_t> a_factor_sizes;
  std::uint64_t b_size = 1;
  std::string note;
};

struct CanonicalOptions {
  std::uint64_t seed = 0x5eed;
  std::uint64_t attempts_per_factor = 20000;
};

/// Canonical tame LS of the group: [A, B', R, GL_1, Y] recursively, every cyclic
/// set refined to prime blocks. Projective families go through project_ls.
LogSignature canonical_ls(const GroupDescriptor& desc, const CanonicalOptions& opt = {});
/// Per-level construction reports of the last canonical build of desc.
std::vector<LevelReport> canonical_level_reports(const GroupDescriptor& desc, const CanonicalOptions& opt = {});

/// The construction's partial spread of totally singular d-spaces (d = m-1 minus,
/// m plus and odd) checked against the singular points of the O-space.
struct SpreadCheck {
  Kind kind = Kind::Minus;
  std::uint64_t q = 0;
  int m = 0;
  int d = 0;
  std::uint64_t points = 0;
  bool literal_a_sharp = false;
  std::uint64_t literal_a_orbit = 0;
  std::uint64_t a_size = 0;
  std::vector<std::uint64_t> a_factor_sizes;
  std::uint64_t b_size = 1;
  PartitionReport partition;
  bool a_sharp = false;  // A -> members is a bijection
  bool b_sharp = false;  // B' -> points of P(W0) is a bijection
  bool ok = false;
  std::string note;
};

SpreadCheck spread_check(Kind kind, std::uint64_t q, int m, const CanonicalOptions& opt = {});
nlohmann::json to_json(const SpreadCheck& c);

/// [R, GL_k x O_{n-2k}] for the stabilizer of <e_1..e_k> in O_n.
LogSignature parabolic_ls(const QuadraticSpace& space, int k);
/// LS of GL_k(q) by Singer transversal and recursion on the stabilizer of e_1.
LogSignature gl_ls(const FieldPtr& field, int k);

/// Image of an LS of G in G/{+-I}. Checks that no block holds two elements of one
/// coset (InjectivityFail) and halves the cyclic segment that -I shifts by half.
LogSignature project_ls(const LogSignature& ls);

struct VerifyReport {
  bool valid = false;
  std::string mode;
  std::uint64_t length = 0, bound = 0;
  bool mls = false;
  std::uint64_t checked = 0;
  std::uint64_t collisions = 0;
  std::uint64_t failures = 0;
  std::uint64_t seed = 0;
  std::string witness;
};

struct VerifyOptions {
  bool exhaustive = true;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  std::uint64_t budget = 1000000;
};

VerifyReport verify_ls(const LogSignature& ls, const VerifyOptions& opt = {});

/// Whether g lies in the group of desc (projective: either lift).
bool in_group(const QuadraticSpace& space, const GroupDescriptor& desc, const Matrix& g);
QuadraticSpace space_for(const GroupDescriptor& desc);
FieldPtr field_for(std::uint64_t q);

nlohmann::json to_json(const LogSignature& ls);
/// Reads an LS file; attaches the canonical decoder when the blocks are canonical.
LogSignature ls_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VerifyReport& r);
nlohmann::json to_json(const LevelReport& r);

}  // namespace olsig
