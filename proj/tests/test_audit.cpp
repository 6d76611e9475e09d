#include "doctest.h"
#include "olsig/audit.hpp"
#include "olsig/error.hpp"
#include "oracle.hpp"

using namespace olsig;

TEST_CASE("closure matches the independent oracle") {
  for (std::string f : {"O-", "SO+", "Omega-", "Omega+", "POmega+"}) {
    CAPTURE(f);
    const auto d = parse_descriptor(f, 3, 2);
    CHECK(enumerate_group(d, 100000).size() == oracle::closure_order(d));
    CHECK(enumerate_group(d, 100000).size() == group_order(d));
  }
  const auto V = space_for(parse_descriptor("Oodd", 3, 1));
  CHECK(reflection_generators(V).size() == oracle::reflections(V).size());
  CHECK_THROWS_AS(closure(reflection_generators(V), 10), Error);
}

TEST_CASE("Omega audit is explicit") {
  for (Kind k : {Kind::Minus, Kind::Plus}) {
    const auto a = omega_audit(k, 3, 4);
    CHECK(a.oracle_order == group_order({Family::Omega, k, 3, 4, 0}));
    CHECK(a.spinor_disagreements == 0);
    // in even dimension rank(I + g) is even for every g in SO
    CHECK(a.criterion_count == a.so_order);
    CHECK(a.disagreements == a.so_order - a.oracle_order);
    CHECK(a.agree() == (a.disagreements == 0));
  }
  const auto odd = omega_audit(Kind::Odd, 3, 3);
  CHECK(odd.oracle_order == 12);
}

TEST_CASE("parabolic orbit-stabilizer") {
  const auto c = parabolic_check(Kind::Odd, 3, 3, 1);
  CHECK(c.ok);
  CHECK(c.orbit == 4);
  CHECK(c.radical * c.levi == 12);
  const auto p = parabolic_check(Kind::Plus, 3, 4, 2);
  CHECK(p.ok);
  CHECK(p.orbit == 8);  // 2(q+1) lines on the hyperbolic quadric
}

TEST_CASE("Omega_3 and Sp_2 orders") {
  const auto c = omega3_vs_sp2(3);
  CHECK(c.omega3 == 12);
  CHECK(c.sp2 == 24);
  CHECK(c.sp2_formula == 24);
  CHECK_FALSE(c.ok);
}
