#include "olsig/group.hpp"

#include "olsig/error.hpp"
#include "olsig/fields.hpp"

namespace olsig {

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::Minus: return "minus";
    case Kind::Plus: return "plus";
    case Kind::Odd: return "odd";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "minus" || s == "-") return Kind::Minus;
  if (s == "plus" || s == "+") return Kind::Plus;
  if (s == "odd") return Kind::Odd;
  throw Error(ErrorCode::InvalidArgument, "unknown kind '" + s + "'");
}

Family GroupDescriptor::lift_family() const {
  if (family == Family::PSO) return Family::SO;
  if (family == Family::POmega) return Family::Omega;
  return family;
}

namespace {

const char* family_prefix(Family f) {
  switch (f) {
    case Family::O: return "O";
    case Family::SO: return "SO";
    case Family::Omega: return "Omega";
    case Family::PSO: return "PSO";
    case Family::POmega: return "POmega";
    case Family::GL: return "GL";
    case Family::Parabolic: return "Parabolic";
  }
  return "?";
}

const char* kind_suffix(Kind k) {
  switch (k) {
    case Kind::Minus: return "-";
    case Kind::Plus: return "+";
    case Kind::Odd: return "odd";
  }
  return "?";
}

}  // namespace

std::string GroupDescriptor::name() const {
  if (family == Family::GL) return "GL";
  return std::string(family_prefix(family)) + kind_suffix(kind);
}

void validate(const GroupDescriptor& d) {
  if (d.q < 3 || d.q % 2 == 0) throw Error(ErrorCode::InvalidArgument, "q must be an odd prime power");
  const auto pf = prime_factors(d.q);
  if (pf.size() != 1) throw Error(ErrorCode::InvalidArgument, "q must be a prime power");
  if (d.n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (d.family == Family::GL) return;
  if ((d.kind == Kind::Odd) != (d.n % 2 == 1))
    throw Error(ErrorCode::InvalidArgument, "dimension parity does not match the kind");
  if (d.family == Family::Parabolic) {
    const int r = d.kind == Kind::Minus ? d.m() - 1 : d.m();
    if (d.k < 1 || d.k > r) throw Error(ErrorCode::InvalidArgument, "k must lie in [1, Witt index]");
  }
}

GroupDescriptor parse_descriptor(const std::string& family, std::uint64_t q, int dim, bool dim_is_n) {
  GroupDescriptor d;
  d.q = q;
  if (family == "GL") {
    d.family = Family::GL;
    d.n = dim;
    validate(d);
    return d;
  }
  static const std::pair<const char*, Family> prefixes[] = {
      {"POmega", Family::POmega}, {"Omega", Family::Omega}, {"PSO", Family::PSO},
      {"SO", Family::SO},         {"Parabolic", Family::Parabolic}, {"O", Family::O}};
  std::string rest;
  bool found = false;
  for (const auto& [pre, fam] : prefixes) {
    const std::string ps(pre);
    if (family.rfind(ps, 0) == 0) {
      d.family = fam;
      rest = family.substr(ps.size());
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
  if (rest == "-") d.kind = Kind::Minus;
  else if (rest == "+") d.kind = Kind::Plus;
  else if (rest == "odd") d.kind = Kind::Odd;
  else throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
  if (dim_is_n) d.n = dim;
  else d.n = d.kind == Kind::Odd ? 2 * dim + 1 : 2 * dim;
  if (d.family == Family::Parabolic) d.k = 1;
  validate(d);
  return d;
}

nlohmann::json to_json(const GroupDescriptor& d) {
  nlohmann::json j = {{"family", d.name()}, {"q", d.q}, {"n", d.n}};
  if (d.family == Family::Parabolic) j["k"] = d.k;
  return j;
}

GroupDescriptor descriptor_from_json(const nlohmann::json& j) {
  GroupDescriptor d = parse_descriptor(j.at("family").get<std::string>(), j.at("q").get<std::uint64_t>(),
                                       j.at("n").get<int>(), true);
  if (j.contains("k")) d.k = j.at("k").get<int>();
  validate(d);
  return d;
}

}  // namespace olsig
