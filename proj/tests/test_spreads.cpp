#include <set>

#include "doctest.h"
#include "olsig/error.hpp"
#include "olsig/spreads.hpp"

using namespace olsig;

TEST_CASE("classical spread partitions V") {
  for (auto [p, m] : std::vector<std::pair<Code, unsigned>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}, {3, 3}, {3, 4}}) {
    FieldTower t = make_tower(p, 1, m);
    const auto S = classical_spread(t);
    CHECK(S.members.size() == ipow(p, m) + 1);
    const auto r = verify_partition(S, {});
    CHECK(r.ok);
    CHECK(r.points == (ipow(p, 2 * m) - 1) / (p - 1));
    CHECK(r.points_per_member == (ipow(p, m) - 1) / (p - 1));
  }
  FieldTower t = make_tower(3, 1, 1);
  const auto S = classical_spread(t);
  const ExtensionBasis B = tower_basis(t);
  // W_0 is the subfield
  for (Code c = 0; c < 3; ++c) CHECK(S.members[0].contains(B.coords(t.embed(Level::Mid, c))));
}

TEST_CASE("duplicated member is reported") {
  FieldTower t = make_tower(3, 1, 2);
  auto S = classical_spread(t);
  S.members.push_back(S.members[3]);
  const auto r = verify_partition(S, {});
  CHECK_FALSE(r.ok);
  CHECK(r.violation.find("member 10") != std::string::npos);
}

TEST_CASE("orbit partial spread basics") {
  const auto s = QuadraticSpace::canonical(Kind::Plus, standard_field(3, 1), 4);
  const Subspace W0(s.field(), 4, {s.basis_vector(0), s.basis_vector(1)});
  const auto o = orbit_partial_spread({Matrix::identity(s.field(), 4)}, W0);
  CHECK(o.spread.members.size() == 1);
  CHECK(o.sharp);
  // <e1,e2> and <e1,f2> meet in <e1>
  Matrix swap = Matrix::identity(s.field(), 4);
  swap.at(1, 1) = 0;
  swap.at(3, 3) = 0;
  swap.at(1, 3) = 1;
  swap.at(3, 1) = 1;
  CHECK(s.is_isometry(swap));
  CHECK_THROWS_AS(orbit_partial_spread({Matrix::identity(s.field(), 4), swap}, W0), Error);
}

TEST_CASE("singular spreads by exact cover") {
  const auto F3 = standard_field(3, 1);
  // Q+(3,3): a regulus of 4 lines
  auto plus = search_singular_spread(QuadraticSpace::canonical(Kind::Plus, F3, 4), 2, 1'000'000);
  REQUIRE(plus.spread);
  CHECK(plus.spread->members.size() == 4);
  CHECK(verify_partition(*plus.spread, QuadraticSpace::canonical(Kind::Plus, F3, 4).singular_points()).ok);
  // Q(4,3) has no line spread
  auto odd = search_singular_spread(QuadraticSpace::canonical(Kind::Odd, F3, 5), 2, 10'000'000);
  CHECK(odd.candidates == 40);
  CHECK(odd.exhausted);
  CHECK_FALSE(odd.spread);
  // Q+(5,3): no plane spread
  auto plus6 = search_singular_spread(QuadraticSpace::canonical(Kind::Plus, F3, 6), 3, 10'000'000);
  CHECK(plus6.candidates == 80);
  CHECK(plus6.exhausted);
  CHECK_FALSE(plus6.spread);
}

TEST_CASE("literal power-step indexing repeats members for odd q") {
  for (auto [p, m] : std::vector<std::pair<Code, unsigned>>{{3, 1}, {3, 2}, {5, 1}}) {
    FieldTower t = make_tower(p, 1, m);
    const auto S = classical_spread_literal(t);
    std::set<std::string> keys;
    for (const auto& w : S.members) keys.insert(w.key());
    CHECK(keys.size() == (ipow(p, m) + 1) / 2);
    CHECK_FALSE(verify_partition(S, {}).ok);
  }
}
