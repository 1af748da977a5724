#include <set>

#include "doctest.h"
#include "sheafcon/corpus.hpp"
#include "sheafcon/dlat.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/io.hpp"

using namespace sheafcon;

TEST_CASE("posets_of_size counts isomorphism classes") {
  const std::vector<std::size_t> expected{1, 1, 2, 5, 16, 63, 318};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    CHECK(posets_of_size(n).size() == expected[n]);
  }
  CHECK(posets_up_to(4).size() == 1 + 2 + 5 + 16);
  CHECK_THROWS_AS(posets_of_size(7), InvalidSizeError);
}

TEST_CASE("posets_of_size elements follow a linear extension") {
  for (const auto& p : posets_of_size(5)) {
    CHECK(p.name(0) == "y0");
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t y = 0; y < x; ++y) {
        CHECK_FALSE(p.less(x, y));
      }
    }
  }
}

TEST_CASE("bounded lattices") {
  auto ls = bounded_lattices_up_to(5);
  CHECK(ls.size() == 10);
  std::set<std::string> names;
  for (const auto& a : ls) {
    names.insert(a->name());
    CHECK(a->signature() == lattice_signature());
  }
  CHECK(names.size() == ls.size());
  CHECK(bounded_lattices_up_to(6).size() == 25);
}

TEST_CASE("mv_corpus") {
  auto c = mv_corpus();
  CHECK(c.size() == 20);
  for (const auto& a : c) {
    CHECK(a.size() <= 12);
  }
}

TEST_CASE("random_algebras are deterministic in the seed") {
  auto a = random_algebras(30, default_seed);
  auto b = random_algebras(30, default_seed);
  auto c = random_algebras(30, default_seed + 1);
  REQUIRE(a.size() == 30);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(algebra_to_json(*a[i]) == algebra_to_json(*b[i]));
    differs = differs || algebra_to_json(*a[i]) != algebra_to_json(*c[i]);
    CHECK(a[i]->size() >= 1);
    CHECK(a[i]->size() <= 4);
  }
  CHECK(differs);
}

TEST_CASE("monotone_assignments") {
  auto con = congruence_lattice(bounded_lattices_up_to(3).back());
  REQUIRE(con.size() == 4);
  CHECK(monotone_assignments(FinitePoset::antichain(2), con).size() == 16);
  // Monotone maps from a 2-chain into the four-element Boolean lattice.
  CHECK(monotone_assignments(FinitePoset::chain(2), con).size() == 9);
}
