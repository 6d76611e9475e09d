#include <set>

#include "doctest.h"
#include "olsig/error.hpp"
#include "olsig/lscore.hpp"
#include "oracle.hpp"

using namespace olsig;

TEST_CASE("length bound") {
  CHECK(min_length_bound(1).bound == 0);
  CHECK(min_length_bound(8).bound == 6);
  CHECK(min_length_bound(1440).bound == 21);
  CHECK(min_length_bound(1152).bound == 20);
  CHECK_THROWS_AS(min_length_bound(0), Error);
}

TEST_CASE("cyclic sets refine into prime blocks") {
  const FieldPtr F = standard_field(3, 1);
  const Matrix x = singer_generator(3, F);  // order 26
  auto sizes = [](const std::vector<Block>& b) {
    std::vector<std::size_t> s;
    for (const auto& blk : b) s.push_back(blk.size());
    return s;
  };
  CHECK(sizes(cyclic_set_blocks(x, 6)) == std::vector<std::size_t>{2, 3});
  CHECK(sizes(cyclic_set_blocks(x, 4)) == std::vector<std::size_t>{2, 2});
  for (std::uint64_t s : {4u, 6u, 13u, 26u}) {
    const LogSignature ls = cyclic_set_mls(x, s);
    std::set<std::string> want, got;
    for (std::uint64_t i = 0; i < s; ++i) want.insert(x.pow(static_cast<std::int64_t>(i)).key());
    IndexVector iv(ls.blocks.size(), 0);
    for (std::uint64_t c = 0; c < s; ++c) {
      got.insert(ls.product(iv).key());
      for (std::size_t b = 0; b < iv.size(); ++b) {
        if (++iv[b] < ls.blocks[b].size()) break;
        iv[b] = 0;
      }
    }
    CHECK(got == want);
    CHECK(ls.length() == min_length_bound(s).bound);
  }
}

TEST_CASE("semidirect rejects overlap") {
  const FieldPtr F = standard_field(3, 1);
  const Matrix x = singer_generator(2, F);
  const Matrix I = Matrix::identity(F, 2);
  GroupDescriptor g{Family::GL, Kind::Plus, 3, 2, 0};
  CHECK_THROWS_AS(semidirect_ls({I, x}, {I, x}, g), Error);
  CHECK_THROWS_AS(semidirect_ls({I, x}, {I, x.pow(2), x.pow(3)}, g), Error);  // x * x^2 == x^3 * I
  const auto ls = semidirect_ls({I, x, x.pow(2), x.pow(3)}, {I, x.pow(4)}, g);
  CHECK(ls.claimed_order == 8);
}

TEST_CASE("table generators have the stated orders") {
  auto t = table1_generators(parse_descriptor("O-", 3, 2));
  CHECK(t.order_a == 10);
  t = table1_generators(parse_descriptor("O+", 3, 2));
  CHECK(t.order_b == 8);
  CHECK(t.order_a == 4);
  t = table1_generators(parse_descriptor("Oodd", 3, 1));
  CHECK(t.order_a == 4);
  t = table1_generators(parse_descriptor("SO-", 5, 3));
  CHECK(t.order_a == 126);
  CHECK(t.order_b == 24);
  CHECK_THROWS_AS(table1_generators(parse_descriptor("Omega-", 3, 2)), Error);
}

TEST_CASE("canonical LS is an exhaustive MLS on small groups") {
  struct Case {
    std::string family;
    std::uint64_t q;
    int m;
    std::uint64_t order, length;
  };
  const Case cases[] = {
      {"O-", 3, 1, 8, 6},          {"O+", 3, 1, 4, 4},        {"SO-", 3, 1, 4, 4},       {"SO+", 3, 1, 2, 2},
      {"Oodd", 3, 0, 2, 2},        {"Oodd", 3, 1, 48, 11},    {"SOodd", 3, 1, 24, 9},    {"Omegaodd", 3, 1, 12, 7},
      {"O-", 3, 2, 1440, 21},      {"O+", 3, 2, 1152, 20},    {"SO-", 3, 2, 720, 19},    {"SO+", 3, 2, 576, 18},
      {"Omega-", 3, 2, 360, 17},   {"Omega+", 3, 2, 288, 16}, {"O-", 5, 1, 12, 7},       {"O+", 5, 1, 8, 6},
      {"Oodd", 5, 1, 240, 16},     {"PSO-", 3, 2, 360, 17},   {"POmega+", 3, 2, 144, 14}, {"PSOodd", 3, 1, 24, 9},
  };
  for (const auto& c : cases) {
    CAPTURE(c.family);
    CAPTURE(c.m);
    const auto d = parse_descriptor(c.family, c.q, c.m);
    const LogSignature ls = canonical_ls(d);
    CHECK(ls.claimed_order == c.order);
    CHECK(ls.length() == c.length);
    const auto r = verify_ls(ls);
    CHECK(r.valid);
    CHECK(r.mls);
    CHECK(r.checked == c.order);
    if (c.order <= 1440) CHECK(oracle::closure_order(d) == c.order);
  }
}

TEST_CASE("sampled verification uses the tame decoder") {
  const LogSignature ls = canonical_ls(parse_descriptor("Oodd", 3, 2));
  VerifyOptions o;
  o.exhaustive = false;
  o.samples = 3000;
  const auto r = verify_ls(ls, o);
  CHECK(r.valid);
  CHECK(r.mls);
  CHECK(r.checked == 3000);
  o.exhaustive = true;
  o.budget = 1000;
  CHECK_THROWS_AS(verify_ls(ls, o), Error);
}

TEST_CASE("tampered LS is caught with a witness") {
  LogSignature ls = canonical_ls(parse_descriptor("O-", 3, 2));
  ls.blocks[1][1] = ls.blocks[1][0];
  const auto r = verify_ls(ls);
  CHECK_FALSE(r.valid);
  CHECK(r.collisions > 0);
  CHECK(r.witness.find("coincide") != std::string::npos);

  LogSignature short_ls = canonical_ls(parse_descriptor("O-", 3, 2));
  short_ls.blocks.back().pop_back();
  CHECK_FALSE(verify_ls(short_ls).valid);
}

TEST_CASE("projection onto the quotient by -I") {
  for (std::string f : {"SO-", "SO+", "Omega-", "Omega+"}) {
    CAPTURE(f);
    const auto lift = canonical_ls(parse_descriptor(f, 3, 2));
    const auto p = project_ls(lift);
    CHECK(p.claimed_order == group_order(p.group));
    CHECK(p.claimed_order * (minus_identity_in(p.group) ? 2 : 1) == lift.claimed_order);
    const auto r = verify_ls(p);
    CHECK(r.valid);
    CHECK(r.mls);
  }
  const auto p = project_ls(canonical_ls(parse_descriptor("SO-", 3, 2)));
  CHECK(p.claimed_order == 360);
  CHECK(p.length() == 17);
  // -I is not in SO_3, so the image is the same LS
  const auto odd = project_ls(canonical_ls(parse_descriptor("SOodd", 3, 1)));
  CHECK(odd.length() == 9);
  CHECK(verify_ls(odd).valid);
}

TEST_CASE("projection rejects a block holding g and -g") {
  LogSignature ls = canonical_ls(parse_descriptor("SO-", 3, 2));
  const auto p = project_ls(ls);
  REQUIRE_FALSE(p.notes.empty());
  // alias the last block (outside the halved segment)
  auto& b = ls.blocks.back();
  b[1] = -b[0];
  CHECK_THROWS_AS(project_ls(ls), Error);
  try {
    project_ls(ls);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InjectivityFail);
  }
  CHECK_THROWS_AS(project_ls(canonical_ls(parse_descriptor("O-", 3, 2))), Error);
}

TEST_CASE("parabolic and GL signatures") {
  const auto V4 = space_for(parse_descriptor("O-", 3, 2));
  const auto p4 = parabolic_ls(V4, 1);
  CHECK(p4.claimed_order == 144);
  CHECK(verify_ls(p4).mls);
  const auto V3 = space_for(parse_descriptor("Oodd", 3, 1));
  const auto p3 = parabolic_ls(V3, 1);
  CHECK(p3.claimed_order == 12);
  CHECK(verify_ls(p3).mls);
  const auto V6 = space_for(parse_descriptor("O+", 3, 3));
  const auto p6 = parabolic_ls(V6, 2);
  CHECK(p6.claimed_order == group_order(p6.group));
  CHECK(verify_ls(p6).valid);

  const auto gl = gl_ls(standard_field(3, 1), 2);
  CHECK(gl.claimed_order == 48);
  CHECK(verify_ls(gl).mls);
  const auto gl3 = gl_ls(standard_field(3, 1), 3);
  CHECK(verify_ls(gl3).mls);
}

TEST_CASE("signature JSON round trip keeps the decoder") {
  const auto ls = canonical_ls(parse_descriptor("SO+", 3, 2));
  const auto back = ls_from_json(to_json(ls));
  CHECK(back.blocks == ls.blocks);
  CHECK(back.decoder != nullptr);
  CHECK_THROWS_AS(ls_from_json(nlohmann::json{{"group", 3}}), Error);
}

TEST_CASE("spread checks for the table constructions") {
  for (auto [kind, q, m] : std::vector<std::tuple<Kind, std::uint64_t, int>>{
           {Kind::Minus, 3, 2}, {Kind::Plus, 3, 2}, {Kind::Odd, 3, 1}, {Kind::Plus, 5, 2}, {Kind::Minus, 3, 3}}) {
    CAPTURE(m);
    const auto c = spread_check(kind, q, m);
    CHECK(c.ok);
    CHECK(c.partition.ok);
    CHECK(c.a_sharp);
    CHECK(c.b_sharp);
  }
  // Q(4,3) has no spread of lines
  const auto odd = spread_check(Kind::Odd, 3, 2);
  CHECK_FALSE(odd.ok);
  CHECK(odd.note.find("no spread") != std::string::npos);
}

TEST_CASE("level reports name the construction") {
  const auto reps = canonical_level_reports(parse_descriptor("O+", 3, 2));
  REQUIRE(reps.size() >= 1);
  CHECK(reps[0].d == 2);
  CHECK(reps[0].literal_a_sharp);
  const auto minus = canonical_level_reports(parse_descriptor("O-", 3, 2));
  CHECK_FALSE(minus[0].literal_a_sharp);
  CHECK(minus[0].literal_a_orbit == 5);
}
