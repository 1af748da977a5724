#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "sheafcon/corpus.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/oracle.hpp"

using namespace sheafcon;
using sheafcon::test::blocks;

namespace {

  std::vector<AlgebraPtr> sample_algebras() {
    auto out = bounded_lattices_up_to(5);
    for (const auto& a : random_algebras(60, default_seed)) {
      out.push_back(a);
    }
    return out;
  }

}  // namespace

TEST_CASE("make accepts lattices and rejects bad tables") {
  auto t = test::two();
  CHECK(t->size() == 2);
  auto c = test::chain3();
  CHECK(c->size() == 3);
  CHECK(c->apply(c->symbol("join"), c->index("0"), c->index("m")) == c->index("m"));

  AlgebraSpec spec = c->to_spec();
  spec.tables["meet"][{"0", "0"}] = "q";
  CHECK_THROWS_AS(Algebra::make(spec), RangeError);

  spec = c->to_spec();
  spec.tables["meet"].erase({"0", "0"});
  CHECK_THROWS_AS(Algebra::make(spec), PartialTableError);

  CHECK_THROWS_AS(Algebra::make("bad", {"0"}, {{"f", 1}}, {{3}}), RangeError);
  CHECK_THROWS(c->symbol("nope"));
}

TEST_CASE("product") {
  auto [sq, proj] = test::square();
  CHECK(sq->size() == 4);
  CHECK(proj.size() == 2);
  CHECK(sq->carrier() == std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)", "(1,1)"});
  for (const auto& p : proj) {
    CHECK(homomorphism_violation(p).empty());
  }
  // The four-element Boolean lattice: (0,1) and (1,0) are complements.
  const auto meet = sq->symbol("meet");
  const auto join = sq->symbol("join");
  CHECK(sq->apply(meet, sq->index("(0,1)"), sq->index("(1,0)")) == sq->index("(0,0)"));
  CHECK(sq->apply(join, sq->index("(0,1)"), sq->index("(1,0)")) == sq->index("(1,1)"));

  auto single = product({test::chain3()});
  CHECK(single.algebra->size() == 3);
  CHECK(kernel(single.projections[0]).is_diagonal());

  auto empty = product({}, lattice_signature());
  CHECK(empty.algebra->size() == 1);
}

TEST_CASE("quotient") {
  auto c = test::chain3();
  CHECK(quotient(c, Congruence::diagonal(c)).algebra->size() == 3);
  CHECK(quotient(c, Congruence::full(c)).algebra->size() == 1);

  auto [sq, proj] = test::square();
  auto k1 = kernel(proj[0]);
  auto q = quotient(sq, k1);
  CHECK(q.algebra->size() == 2);
  CHECK(homomorphism_violation(q.projection).empty());
  CHECK(kernel(q.projection) == k1);

  CHECK_THROWS_AS(quotient(sq, Congruence::diagonal(c)), ForeignCongruenceError);
}

TEST_CASE("principal congruences on the 3-chain") {
  auto c = test::chain3();
  CHECK(principal_congruence(c, "m", "m").is_diagonal());
  CHECK(principal_congruence(c, "0", "m") == blocks(c, {{"0", "m"}, {"1"}}));
  CHECK(principal_congruence(c, "0", "1").is_full());
  CHECK_THROWS_AS(principal_congruence(c, "0", "z"), UnknownElementError);
}

TEST_CASE("principal congruences agree with the oracle") {
  for (const auto& a : sample_algebras()) {
    for (std::size_t x = 0; x < a->size(); ++x) {
      for (std::size_t y = 0; y < a->size(); ++y) {
        CHECK(principal_congruence(a, x, y).labels() == oracle::principal(*a, x, y));
      }
    }
  }
}

TEST_CASE("congruence lattice sizes") {
  CHECK(congruence_lattice(test::two()).size() == 2);
  CHECK(congruence_lattice(test::chain3()).size() == 4);
  CHECK(congruence_lattice(test::square().algebra).size() == 4);
}

TEST_CASE("congruence lattice agrees with the partition oracle") {
  for (const auto& a : sample_algebras()) {
    auto con = congruence_lattice(a);
    std::vector<oracle::Labels> got;
    for (const auto& c : con.members()) {
      got.push_back(c.labels());
    }
    std::sort(got.begin(), got.end());
    REQUIRE(got == oracle::congruences(*a));
    CHECK(con[con.bottom()].is_diagonal());
    CHECK(con[con.top()].is_full());
    for (std::size_t i = 0; i < con.size(); ++i) {
      for (std::size_t j = 0; j < con.size(); ++j) {
        CHECK(con.leq(i, j) == con[i].leq(con[j]));
        CHECK(con[con.meet(i, j)] == con[i].meet(con[j]));
        CHECK(con[con.join(i, j)] == con[i].join(con[j]));
      }
    }
  }
}

TEST_CASE("congruence validation") {
  auto c = test::chain3();
  // {0,1} without m is not convex, so not compatible with meet.
  CHECK_THROWS_AS(blocks(c, {{"0", "1"}, {"m"}}), NotCongruenceError);
  CHECK_THROWS_AS(Congruence::from_blocks(c, {{0, 1}}), RangeError);
  auto t = test::two();
  CHECK_THROWS_AS(Congruence::diagonal(c).meet(Congruence::diagonal(t)), AlgebraMismatchError);
}

TEST_CASE("kernel") {
  auto c = test::chain3();
  CHECK(kernel(identity_homomorphism(c)).is_diagonal());
  CHECK(kernel(terminal_homomorphism(c)).is_full());
  auto [sq, proj] = test::square();
  CHECK(kernel(proj[0]) == blocks(sq, {{"(0,0)", "(0,1)"}, {"(1,0)", "(1,1)"}}));

  Homomorphism bad{c, c, {2, 1, 0}};
  CHECK_FALSE(homomorphism_violation(bad).empty());
  CHECK_THROWS_AS(kernel(bad), NotHomomorphismError);
}

TEST_CASE("tuple encoding round-trips") {
  for (std::size_t code = 0; code < 27; ++code) {
    auto t = decode_tuple(code, 3, 3);
    CHECK(encode_tuple(t, 3) == code);
  }
}
