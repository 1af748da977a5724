#include <algorithm>

#include "doctest.h"
#include "sheafcon/corpus.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/oracle.hpp"
#include "sheafcon/poset.hpp"

using namespace sheafcon;

TEST_CASE("make builds the reflexive transitive closure") {
  auto p = FinitePoset::make({"a"}, {});
  CHECK(p.size() == 1);
  CHECK(p.leq(0, 0));

  auto c = FinitePoset::make({"a", "b"}, {{"a", "b"}});
  CHECK(c.less(0, 1));
  CHECK_FALSE(c.leq(1, 0));

  auto t = FinitePoset::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(t.leq(0, 2));
  CHECK(t.covers(0, 1));
  CHECK_FALSE(t.covers(0, 2));
  CHECK(t.cover_pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
}

TEST_CASE("make rejects malformed input") {
  CHECK_THROWS_AS(FinitePoset::make({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
  CHECK_THROWS_AS(FinitePoset::make({"a", "a"}, {}), DuplicateElementError);
  CHECK_THROWS_AS(FinitePoset::make({"a"}, {{"a", "z"}}), UnknownElementError);
}

TEST_CASE("enumerate_sets on small posets") {
  auto point = FinitePoset::make({"a"}, {});
  CHECK(enumerate_sets(point, Direction::up) == std::vector<ElemSet>{ElemSet(0), ElemSet(1)});

  auto c = FinitePoset::make({"a", "b"}, {{"a", "b"}});
  CHECK(enumerate_sets(c, Direction::up)
        == std::vector<ElemSet>{ElemSet(0), ElemSet(0b10), ElemSet(0b11)});

  CHECK(enumerate_sets(FinitePoset::antichain(2), Direction::down).size() == 4);
}

TEST_CASE("enumerate_sets agrees with the subset filter on every poset up to 5") {
  for (const auto& p : posets_up_to(5)) {
    for (auto d : {Direction::up, Direction::down}) {
      auto sets = enumerate_sets(p, d);
      CHECK(sets == oracle::closed_sets(p, d));
      for (ElemSet s : sets) {
        CHECK(p.is_closed(s, d));
      }
    }
    // Up-sets and down-sets are complements of each other.
    auto ups = enumerate_sets(p, Direction::up);
    auto downs = enumerate_sets(p, Direction::down);
    std::vector<ElemSet> comp;
    for (ElemSet u : ups) {
      comp.push_back(u.complement(p.size()));
    }
    std::sort(comp.begin(), comp.end());
    CHECK(comp == downs);
  }
}

TEST_CASE("closure") {
  auto c = FinitePoset::make({"a", "b"}, {{"a", "b"}});
  CHECK(closure(c, {"a"}, Direction::up) == ElemSet(0b11));
  CHECK(closure(c, {"b"}, Direction::down) == ElemSet(0b11));
  CHECK(closure(c, {"b"}, Direction::up) == ElemSet(0b10));
  CHECK(closure(c, std::vector<std::string>{}, Direction::up).empty());
  CHECK_THROWS_AS(closure(c, {"z"}, Direction::up), UnknownElementError);
}

TEST_CASE("hofmann_mislove_check") {
  auto point = FinitePoset::make({"a"}, {});
  auto r = hofmann_mislove_check(point);
  CHECK(r.holds);
  CHECK(r.up_sets == 2);
  CHECK(r.filters == 2);

  auto r2 = hofmann_mislove_check(FinitePoset::chain(2));
  CHECK(r2.holds);
  CHECK(r2.up_sets == 3);
  CHECK(r2.filters == 3);

  auto v = FinitePoset::make({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  CHECK(hofmann_mislove_check(v).holds);
}

TEST_CASE("hofmann_mislove_check counts match the filter oracle") {
  for (const auto& p : posets_up_to(4)) {
    auto ups = enumerate_sets(p, Direction::up);
    auto r = hofmann_mislove_check(p);
    CHECK(r.holds);
    CHECK(r.filters == oracle::filters(ups).size());
    CHECK(r.bijection.size() == ups.size());
  }
}

TEST_CASE("monotone maps") {
  auto c = FinitePoset::chain(2);
  auto a = FinitePoset::antichain(2);
  CHECK_THROWS_AS(MonotoneMap(c, a, {0, 1}), NotMonotoneError);
  CHECK_THROWS_AS(MonotoneMap(c, a, {0, 5}), RangeError);
  MonotoneMap f(a, c, {1, 0});
  CHECK(f.preimage(ElemSet(0b10)) == ElemSet(0b01));
  CHECK(f.image(ElemSet(0b01)) == ElemSet(0b10));
  // 2-chain -> 2-chain has three monotone maps, antichain -> chain four.
  CHECK(enumerate_monotone_maps(c, c).size() == 3);
  CHECK(enumerate_monotone_maps(a, c).size() == 4);
  CHECK(MonotoneMap::to_point(c).target().size() == 1);
}

TEST_CASE("enumerate_monotone_maps agrees with brute force") {
  auto ps = posets_up_to(3);
  for (const auto& p : ps) {
    for (const auto& q : ps) {
      std::size_t count = 0;
      std::vector<std::size_t> m(p.size(), 0);
      for (;;) {
        bool ok = true;
        for (std::size_t x = 0; x < p.size() && ok; ++x) {
          for (std::size_t y = 0; y < p.size() && ok; ++y) {
            ok = !p.leq(x, y) || q.leq(m[x], m[y]);
          }
        }
        count += ok;
        std::size_t i = 0;
        while (i < m.size() && ++m[i] == q.size()) {
          m[i++] = 0;
        }
        if (i == m.size()) {
          break;
        }
      }
      CHECK(enumerate_monotone_maps(p, q).size() == count);
    }
  }
}

TEST_CASE("dual reverses the order") {
  auto c = FinitePoset::chain(3);
  auto d = c.dual();
  CHECK(d.leq(2, 0));
  CHECK(enumerate_sets(c, Direction::up) == enumerate_sets(d, Direction::down));
}
