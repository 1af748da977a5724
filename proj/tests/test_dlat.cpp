#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "sheafcon/corpus.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/oracle.hpp"
#include "sheafcon/perm.hpp"

using namespace sheafcon;
using sheafcon::test::blocks;

namespace {

  std::vector<DistLattice> distributive_corpus(std::size_t n) {
    std::vector<DistLattice> out;
    for (const auto& a : bounded_lattices_up_to(n)) {
      try {
        out.push_back(DistLattice::make(a));
      } catch (const NotLatticeError&) {
      }
    }
    return out;
  }

  /// Every total map X -> Y, by odometer.
  template <class F>
  void for_each_map(const FinitePoset& x, const FinitePoset& y, F&& visit) {
    std::vector<std::size_t> m(x.size(), 0);
    for (;;) {
      visit(Decomposition{x, y, m});
      std::size_t i = 0;
      while (i < m.size() && ++m[i] == y.size()) {
        m[i++] = 0;
      }
      if (i == m.size()) {
        return;
      }
    }
  }

}  // namespace

TEST_CASE("DistLattice::make") {
  CHECK_NOTHROW(DistLattice::make(test::chain3()));
  // M3 is a lattice but not distributive.
  auto m3 = lattice_from_order(
      FinitePoset::make({"0", "a", "b", "c", "1"},
                        {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}),
      "M3");
  CHECK_THROWS_AS(DistLattice::make(m3), NotLatticeError);
  CHECK_THROWS_AS(lattice_from_order(FinitePoset::antichain(2), "v"), NotLatticeError);
  // The corpus up to 5 has 1+1+1+2+5 lattices, of which M3 and N5 fail.
  CHECK(distributive_corpus(5).size() == 8);
}

TEST_CASE("priestley_dual examples") {
  auto d2 = priestley_dual(DistLattice::make(test::two()));
  CHECK(d2.x.size() == 1);

  auto dsq = priestley_dual(DistLattice::make(test::square().algebra));
  CHECK(dsq.x.size() == 2);
  CHECK_FALSE(dsq.x.comparable(0, 1));

  for (std::size_t n = 2; n <= 5; ++n) {
    auto c = lattice_from_order(FinitePoset::chain(n), "c");
    auto d = priestley_dual(DistLattice::make(c));
    CHECK(d.x.size() == n - 1);
    for (std::size_t i = 0; i + 1 < d.x.size(); ++i) {
      CHECK(d.x.less(i, i + 1));
    }
  }
}

TEST_CASE("priestley_dual agrees with the prime ideal oracle") {
  for (const auto& l : distributive_corpus(6)) {
    auto d = priestley_dual(l);
    auto got = d.prime_ideals;
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::lattice_prime_ideals(*l.algebra()));
    for (std::size_t i = 0; i < d.x.size(); ++i) {
      for (std::size_t j = 0; j < d.x.size(); ++j) {
        CHECK(d.x.leq(i, j) == d.prime_ideals[i].subset_of(d.prime_ideals[j]));
      }
    }
    for (std::size_t a = 0; a < l.size(); ++a) {
      CHECK(d.x.is_closed(d.hat[a], Direction::down));
      for (std::size_t p = 0; p < d.x.size(); ++p) {
        CHECK(d.hat[a].contains(p) == !d.prime_ideals[p].contains(a));
      }
    }
  }
}

TEST_CASE("down_set_lattice inverts the dual") {
  for (const auto& p : posets_up_to(4)) {
    auto l = down_set_lattice(p);
    auto d = priestley_dual(l);
    CHECK(d.x.size() == p.size());
    CHECK(enumerate_sets(d.x, Direction::up).size() == enumerate_sets(p, Direction::up).size());
  }
}

TEST_CASE("closed subsets and congruences") {
  auto c = test::chain3();
  auto d = priestley_dual(DistLattice::make(c));
  CHECK(cong_from_closed(d, d.x.all()).is_diagonal());
  CHECK(cong_from_closed(d, ElemSet(0)).is_full());
  auto t = cong_from_closed(d, ElemSet(0b01));
  CHECK(t == blocks(c, {{"0"}, {"m", "1"}}));
  CHECK(closed_from_cong(d, Congruence::diagonal(c)) == d.x.all());
  CHECK(closed_from_cong(d, Congruence::full(c)).empty());
  CHECK(closed_from_cong(d, t) == ElemSet(0b01));
}

TEST_CASE("sp_check on the distributive corpus") {
  for (const auto& l : distributive_corpus(6)) {
    auto d = priestley_dual(l);
    auto r = sp_check(d);
    CHECK(r);
    CHECK(r.congruences == (std::size_t{1} << d.x.size()));
    CHECK(oracle::congruences(*l.algebra()).size() == r.congruences);
  }
}

TEST_CASE("interpolation_condition examples") {
  auto x = FinitePoset::chain(2, "p");
  CHECK(interpolation_condition(x, ElemSet(0b01), ElemSet(0b01)));
  CHECK(interpolation_condition(x, ElemSet(0), ElemSet(0b11)));
  auto r = interpolation_condition(x, ElemSet(0b10), ElemSet(0b01));
  CHECK_FALSE(r);
  REQUIRE(r.witness);
}

TEST_CASE("interpolation characterises commuting congruences") {
  for (const auto& l : distributive_corpus(6)) {
    auto d = priestley_dual(l);
    const std::size_t n = std::size_t{1} << d.x.size();
    for (std::size_t c1 = 0; c1 < n; ++c1) {
      for (std::size_t c2 = 0; c2 < n; ++c2) {
        auto t1 = cong_from_closed(d, ElemSet(c1));
        auto t2 = cong_from_closed(d, ElemSet(c2));
        bool commutes = oracle::compose(t1.labels(), t2.labels())
                        == oracle::compose(t2.labels(), t1.labels());
        CHECK(interpolation_condition(d.x, ElemSet(c1), ElemSet(c2)).holds == commutes);
      }
    }
  }
}

TEST_CASE("is_interpolating_decomposition examples") {
  auto x = FinitePoset::chain(2, "x");
  auto y = test::antichain2();
  CHECK(is_interpolating_decomposition({x, y, {0, 0}}));
  CHECK(is_interpolating_decomposition({x, x, {0, 1}}));
  auto r = is_interpolating_decomposition({x, y, {0, 1}});
  CHECK_FALSE(r);
  CHECK(r.witness == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK_THROWS_AS(validate_decomposition({x, y, {0}}), RangeError);
  CHECK_THROWS_AS(validate_decomposition({x, y, {0, 2}}), RangeError);
}

TEST_CASE("psi_of_q examples") {
  auto c = test::chain3();
  auto d = priestley_dual(DistLattice::make(c));
  auto point = FinitePoset::make({"y"}, {});
  auto h = psi_of_q(d, {d.x, point, {0, 0}});
  CHECK(h.assignment.stalk(0).is_diagonal());

  auto [sq, proj] = test::square();
  auto ds = priestley_dual(DistLattice::make(sq));
  auto y = test::antichain2();
  std::vector<Congruence> stalks;
  for (const auto& m : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
    auto hs = psi_of_q(ds, {ds.x, y, m});
    CHECK(hs.assignment.stalk(0).meet(hs.assignment.stalk(1)).is_diagonal());
    stalks.push_back(hs.assignment.stalk(0));
  }
  // One of the two bijections gives ker pi_1 at y1, the other ker pi_2.
  std::sort(stalks.begin(), stalks.end());
  std::vector<Congruence> kers{kernel(proj[0]), kernel(proj[1])};
  std::sort(kers.begin(), kers.end());
  CHECK(stalks == kers);

  auto x2 = priestley_dual(DistLattice::make(lattice_from_order(FinitePoset::chain(3), "c")));
  CHECK_THROWS_AS(psi_of_q(x2, {x2.x, y, {0, 1}}), NotInterpolatingError);
  CHECK_THROWS_AS(psi_of_q(x2, {y, y, {0, 1}}), PreconditionError);
}

TEST_CASE("q_of_sheaf examples") {
  auto c = test::chain3();
  auto d = priestley_dual(DistLattice::make(c));
  auto point = FinitePoset::make({"y"}, {});
  auto f = build_sheaf(StalkAssignment(point, c, {Congruence::diagonal(c)}));
  auto q = q_of_sheaf(d, f);
  CHECK(q.map == std::vector<std::size_t>{0, 0});

  auto [sq, proj] = test::square();
  auto ds = priestley_dual(DistLattice::make(sq));
  auto kp = build_sheaf(StalkAssignment(test::antichain2(), sq, {kernel(proj[0]), kernel(proj[1])}));
  auto qk = q_of_sheaf(ds, kp);
  CHECK(qk.y == test::antichain2());
  CHECK(qk.map[0] != qk.map[1]);
  CHECK(psi_of_q(ds, qk).assignment == kp.assignment());
}

TEST_CASE("interpolating decompositions and soft sheaves correspond") {
  auto ys = posets_up_to(3);
  std::size_t interpolating = 0;
  std::size_t rejected = 0;
  for (const auto& l : distributive_corpus(6)) {
    auto d = priestley_dual(l);
    for (const auto& y : ys) {
      for_each_map(d.x, y, [&](const Decomposition& q) {
        bool interp = is_interpolating_decomposition(q).holds;
        auto sa = psi_assignment(d, q);
        auto v = validate_frame_hom(sa);
        CHECK(v.ok() == interp);
        if (!interp) {
          ++rejected;
          CHECK_THROWS_AS(psi_of_q(d, q), NotInterpolatingError);
          return;
        }
        ++interpolating;
        auto f = build_sheaf(*v.hom);
        CHECK(is_soft(f));
        CHECK(eta_check(f).isomorphism());
        CHECK(q_of_sheaf(d, f).map == q.map);
      });
    }
  }
  CHECK(interpolating > 0);
  CHECK(rejected > 0);
}

TEST_CASE("composing with a monotone map gives the direct image") {
  auto ys = posets_up_to(2);
  for (const auto& l : distributive_corpus(5)) {
    auto d = priestley_dual(l);
    for (const auto& y : ys) {
      for_each_map(d.x, y, [&](const Decomposition& q) {
        if (!is_interpolating_decomposition(q)) {
          return;
        }
        auto f = build_sheaf(psi_of_q(d, q));
        for (const auto& z : ys) {
          for (const auto& m : enumerate_monotone_maps(y, z)) {
            auto qz = compose(q, m);
            CHECK(is_interpolating_decomposition(qz));
            CHECK(psi_of_q(d, qz).assignment.stalks()
                  == direct_image(f, m).assignment().stalks());
          }
        }
      });
    }
  }
}
