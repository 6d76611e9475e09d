#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace olsig {

enum class Kind { Minus, Plus, Odd };
enum class Family { O, SO, Omega, PSO, POmega, GL, Parabolic };

const char* to_string(Kind kind);
Kind parse_kind(const std::string& s);

/// A group by family, field size and dimension. For GL the kind is ignored; for
/// Parabolic, k is the dimension of the stabilized totally singular subspace.
struct GroupDescriptor {
  Family family = Family::O;
  Kind kind = Kind::Minus;
  std::uint64_t q = 3;
  int n = 2;
  int k = 0;

  /// Half-rank parameter: n = 2m for minus/plus, n = 2m+1 for odd.
  int m() const { return kind == Kind::Odd ? (n - 1) / 2 : n / 2; }
  bool projective() const { return family == Family::PSO || family == Family::POmega; }
  /// The linear family a projective family is a quotient of.
  Family lift_family() const;
  /// "O-", "SOodd", "POmega+", "GL", "Parabolic-" ...
  std::string name() const;

  bool operator==(const GroupDescriptor&) const = default;
};

/// Parses a family name such as "SO+" or "Omegaodd"; dim is m for minus/plus/odd
/// (converted to n) unless dim_is_n.
GroupDescriptor parse_descriptor(const std::string& family, std::uint64_t q, int dim, bool dim_is_n = false);
void validate(const GroupDescriptor& d);

nlohmann::json to_json(const GroupDescriptor& d);
GroupDescriptor descriptor_from_json(const nlohmann::json& j);

}  // namespace olsig
