#pragma once

// Independent checks by brute-force enumeration: closure of generators,
// commutator subgroups, orbit-stabilizer counts.

#include <cstdint>
#include <string>
#include <vector>

#include "olsig/lscore.hpp"

namespace olsig {

/// Subgroup generated by gens (breadth-first). Throws CapExceeded past cap elements.
std::vector<Matrix> closure(const std::vector<Matrix>& gens, std::uint64_t cap);
/// One reflection per anisotropic point of the space.
std::vector<Matrix> reflection_generators(const QuadraticSpace& V);
/// Derived subgroup of the group with the given elements and generating set.
std::vector<Matrix> derived_subgroup(const std::vector<Matrix>& elements, const std::vector<Matrix>& gens,
                                     std::uint64_t cap);
/// Elements of the group by closure: O from reflections, SO by det, Omega as the
/// derived subgroup of O, projective families as classes mod -I (one lift each).
std::vector<Matrix> enumerate_group(const GroupDescriptor& desc, std::uint64_t cap);

struct OmegaAudit {
  GroupDescriptor so;
  std::uint64_t so_order = 0;
  std::uint64_t oracle_order = 0;     // |[O, O]| by commutator closure
  std::uint64_t criterion_count = 0;  // elements of SO with rank(I + g) even
  std::uint64_t spinor_count = 0;     // elements of SO with square spinor norm
  std::uint64_t disagreements = 0;    // criterion vs oracle
  std::uint64_t spinor_disagreements = 0;
  std::vector<std::string> examples;  // a few disagreeing elements
  bool agree() const { return disagreements == 0; }
};
OmegaAudit omega_audit(Kind kind, std::uint64_t q, int n, std::uint64_t cap = 2000000);

struct ParabolicCheck {
  GroupDescriptor group;  // the O group
  int k = 1;
  std::uint64_t group_order = 0;
  std::uint64_t orbit = 0;  // orbit of <e_1 .. e_k> under reflections
  std::uint64_t radical = 0, levi = 0;
  VerifyReport ls;
  bool ok = false;
};
ParabolicCheck parabolic_check(Kind kind, std::uint64_t q, int n, int k, std::uint64_t budget = 1000000);

struct Omega3Check {
  std::uint64_t q = 0;
  std::uint64_t omega3 = 0;     // by commutator closure in O_3(q)
  std::uint64_t sp2 = 0;        // by closure of transvections
  std::uint64_t sp2_formula = 0;
  bool ok = false;
};
Omega3Check omega3_vs_sp2(std::uint64_t q);

nlohmann::json to_json(const OmegaAudit& a);
nlohmann::json to_json(const ParabolicCheck& c);
nlohmann::json to_json(const Omega3Check& c);

}  // namespace olsig
