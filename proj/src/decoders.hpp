#pragma once

// Decoders for the canonical constructions. Internal to the library.

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "olsig/forms.hpp"
#include "olsig/lscore.hpp"

namespace olsig::detail {

/// Digits of exponent e in the mixed radix r_0 r_1 ... (first digit least significant).
std::vector<std::uint32_t> radix_digits(std::uint64_t e, const std::vector<std::uint64_t>& radix);
std::uint64_t radix_value(const std::uint32_t* digits, const std::vector<std::uint64_t>& radix);

/// One level of the recursive construction, in the level's own coordinates.
struct LevelPlan {
  QuadraticSpace space;
  Family family = Family::O;
  std::size_t first_block = 0;  // index of this level's first block in the full LS

  // base level: every element listed with its index vector (blocks base_blocks)
  bool base = false;
  std::size_t base_blocks = 0;
  std::unordered_map<std::string, IndexVector> base_table;

  // transversal: point key of g(e_0) -> (indices, inverse element)
  std::size_t transversal_blocks = 0;
  struct TransversalEntry {
    IndexVector indices;
    Matrix inverse;
  };
  std::unordered_map<std::uint64_t, TransversalEntry> transversal;

  // Siegel radical: block for coordinate j (level coords) and F_p-basis element b
  std::vector<int> siegel_coords;
  unsigned field_degree = 1;

  // Levi torus: c^i with g(e_0) = lambda0^(step i) e_0
  std::vector<std::uint64_t> levi_radix;
  Matrix levi_gen;
  std::uint64_t levi_size = 1;
  unsigned levi_step = 1;
  Code lambda0 = 1;

  std::shared_ptr<LevelPlan> sub;

  std::size_t siegel_first() const { return first_block + transversal_blocks; }
  std::size_t levi_first() const { return siegel_first() + siegel_coords.size() * field_degree; }
  std::size_t block_count() const;
};

class LevelDecoder : public Decoder {
 public:
  LevelDecoder(std::shared_ptr<const LevelPlan> plan, std::size_t total_blocks)
      : plan_(std::move(plan)), total_(total_blocks) {}
  IndexVector decode(const Matrix& g, DecodeStats* stats) const override;

 private:
  void decode_level(const LevelPlan& L, Matrix g, IndexVector& out, DecodeStats* stats) const;
  std::shared_ptr<const LevelPlan> plan_;
  std::size_t total_;
};

/// Decoder by full lookup (small groups, parabolic and GL signatures).
class TableDecoder : public Decoder {
 public:
  TableDecoder(const LogSignature& ls);
  IndexVector decode(const Matrix& g, DecodeStats* stats) const override;

 private:
  std::unordered_map<std::string, IndexVector> table_;
  bool projective_;
};

/// Decoder for an LS of G/{+-I} obtained by halving one cyclic segment of a lift LS.
class ProjectiveDecoder : public Decoder {
 public:
  ProjectiveDecoder(std::shared_ptr<const Decoder> lift, CyclicSegment old_seg, CyclicSegment new_seg, bool halved)
      : lift_(std::move(lift)), old_(std::move(old_seg)), new_(std::move(new_seg)), halved_(halved) {}
  IndexVector decode(const Matrix& g, DecodeStats* stats) const override;

 private:
  std::shared_ptr<const Decoder> lift_;
  CyclicSegment old_, new_;
  bool halved_;
};

/// Decoder for blocks shuffled by perm[i][alpha index] = beta index, after translation folding.
class PermutedDecoder : public Decoder {
 public:
  PermutedDecoder(std::shared_ptr<const Decoder> base, std::vector<std::vector<std::uint32_t>> perm)
      : base_(std::move(base)), perm_(std::move(perm)) {}
  IndexVector decode(const Matrix& g, DecodeStats* stats) const override;

 private:
  std::shared_ptr<const Decoder> base_;
  std::vector<std::vector<std::uint32_t>> perm_;
};

/// Smallest key over {g, -g}.
std::string class_key(const Matrix& g);

}  // namespace olsig::detail
