#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "sheafcon/corpus.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/oracle.hpp"
#include "sheafcon/sheaf.hpp"

using namespace sheafcon;

namespace {

  /// Antichain {y1,y2} over 2x2 with theta_yi = ker pi_i.
  StalkAssignment kerpi() {
    auto [sq, proj] = test::square();
    return StalkAssignment(test::antichain2(), sq, {kernel(proj[0]), kernel(proj[1])});
  }

  StalkAssignment noncommuting() {
    auto c = test::chain3();
    return StalkAssignment(test::antichain2(), c,
                           {principal_congruence(c, "0", "m"), principal_congruence(c, "m", "1")});
  }

  StalkAssignment point_diagonal(const AlgebraPtr& a) {
    return StalkAssignment(FinitePoset::make({"y"}, {}), a, {Congruence::diagonal(a)});
  }

  /// Every monotone assignment over posets up to 3 into lattices up to 4.
  template <class F>
  void for_each_small_assignment(F&& visit) {
    for (const auto& a : bounded_lattices_up_to(4)) {
      auto con = congruence_lattice(a);
      for (const auto& y : posets_up_to(3)) {
        for (const auto& sa : monotone_assignments(y, con)) {
          visit(sa);
        }
      }
    }
  }

}  // namespace

TEST_CASE("stalk assignments") {
  auto c = test::chain3();
  CHECK_NOTHROW(point_diagonal(c));
  CHECK_NOTHROW(kerpi());
  CHECK_THROWS_AS(StalkAssignment(test::chain2(), c,
                                  {Congruence::full(c), Congruence::diagonal(c)}),
                  MonotonicityError);
  CHECK_THROWS_AS(StalkAssignment(test::chain2(), c, {Congruence::full(c)}), RangeError);
  CHECK(kerpi().theta(ElemSet(0)).is_full());
  CHECK(kerpi().theta(ElemSet(0b11)).is_diagonal());
}

TEST_CASE("validate_frame_hom") {
  auto v = validate_frame_hom(kerpi());
  REQUIRE(v.ok());
  CHECK(v.hom->up_sets_checked == 4);

  auto c = test::chain3();
  auto full = validate_frame_hom(
      StalkAssignment(FinitePoset::make({"y"}, {}), c, {Congruence::full(c)}));
  REQUIRE(full.failure);
  CHECK(full.failure->kind == FrameHomFailure::Kind::whole_not_diagonal);

  auto nc = validate_frame_hom(noncommuting());
  REQUIRE(nc.failure);
  CHECK(nc.failure->kind == FrameHomFailure::Kind::not_commuting);
}

TEST_CASE("build_sheaf stalks") {
  auto c = test::chain3();
  auto f = build_sheaf(point_diagonal(c));
  CHECK(f.stalk(0).algebra->size() == 3);
  CHECK(enumerate_sections(f, f.base().all()).size() == 3);

  auto g = build_sheaf(kerpi());
  CHECK(g.stalk(0).algebra->size() == 2);
  CHECK(g.stalk(1).algebra->size() == 2);

  auto t = test::two();
  auto h = build_sheaf(StalkAssignment(test::chain2(), t,
                                       {Congruence::diagonal(t), Congruence::full(t)}));
  CHECK(h.stalk(0).algebra->size() == 2);
  CHECK(h.stalk(1).algebra->size() == 1);
}

TEST_CASE("sections_over") {
  auto f = build_sheaf(kerpi());
  CHECK(sections_over(f, ElemSet(0)).algebra->size() == 1);
  auto all = sections_over(f, ElemSet(0b11));
  CHECK(all.algebra->size() == 4);
  CHECK(congruence_lattice(all.algebra).size() == 4);
  CHECK(sections_over(f, ElemSet(0b01)).algebra->size() == 2);
}

TEST_CASE("enumerate_sections agrees with the full continuity oracle") {
  for_each_small_assignment([](const StalkAssignment& sa) {
    auto f = build_sheaf(sa);
    for (ElemSet s : enumerate_sets(f.base(), Direction::up)) {
      CHECK(enumerate_sections(f, s) == oracle::sections(f, s));
    }
  });
}

TEST_CASE("equalizer") {
  auto f = build_sheaf(kerpi());
  CHECK(equalizer(f, "(0,1)", "(0,1)") == ElemSet(0b11));
  CHECK(equalizer(f, "(0,0)", "(0,1)") == ElemSet(0b01));
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      CHECK((equalizer(f, a, b) == ElemSet(0b11)) == (a == b));
    }
  }
  CHECK_THROWS_AS(equalizer(f, "(0,0)", "(2,2)"), UnknownElementError);
}

TEST_CASE("theta_of_sheaf") {
  auto sa = kerpi();
  auto f = build_sheaf(sa);
  CHECK(theta_of_sheaf_at(f, ElemSet(0)).is_full());
  CHECK(theta_of_sheaf_at(f, ElemSet(0b01)) == sa.stalk(0));
  CHECK(theta_of_sheaf_at(f, ElemSet(0b11)).is_diagonal());
  CHECK(theta_of_sheaf(f) == sa);
}

TEST_CASE("is_soft") {
  CHECK(is_soft(build_sheaf(point_diagonal(test::chain3()))));
  CHECK(is_soft(build_sheaf(kerpi())));

  auto f = build_sheaf(noncommuting());
  auto r = is_soft(f);
  CHECK_FALSE(r);
  REQUIRE(r.unextendable);
  CHECK(*r.up_set == ElemSet(0b11));
  auto c = f.algebra();
  CHECK(r.unextendable->values[0] == f.germ(c->index("1"), 0));
  CHECK(r.unextendable->values[1] == f.germ(c->index("0"), 1));
}

TEST_CASE("global_sections_check and roundtrip") {
  auto c = test::chain3();
  auto p = validate_frame_hom(point_diagonal(c));
  REQUIRE(p.ok());
  CHECK(global_sections_check(*p.hom));
  CHECK(roundtrip_main(*p.hom));

  auto k = validate_frame_hom(kerpi());
  REQUIRE(k.ok());
  auto g = global_sections_check(*k.hom);
  CHECK(g);
  CHECK(g.eta.global_sections == 4);
  CHECK(roundtrip_main(*k.hom));

  auto [sq, proj] = test::square();
  auto chained = validate_frame_hom(
      StalkAssignment(test::chain2(), sq, {Congruence::diagonal(sq), kernel(proj[0])}));
  REQUIRE(chained.ok());
  CHECK(global_sections_check(*chained.hom));
  CHECK(theta_of_sheaf_at(build_sheaf(*chained.hom), ElemSet(0b10)) == kernel(proj[0]));
}

TEST_CASE("theta_F commutes and is a frame map on small validated sheaves") {
  std::size_t validated = 0;
  for_each_small_assignment([&](const StalkAssignment& sa) {
    auto v = validate_frame_hom(sa);
    if (!v.ok()) {
      return;
    }
    ++validated;
    auto f = build_sheaf(*v.hom);
    CHECK(roundtrip_main(*v.hom));
    auto ups = enumerate_sets(f.base(), Direction::up);
    for (ElemSet k1 : ups) {
      for (ElemSet k2 : ups) {
        auto t1 = theta_of_sheaf_at(f, k1);
        auto t2 = theta_of_sheaf_at(f, k2);
        auto t12 = theta_of_sheaf_at(f, k1 & k2);
        CHECK(t12 == t1.join(t2));
        auto comp = oracle::compose(t1.labels(), t2.labels());
        std::sort(comp.begin(), comp.end());
        CHECK(comp == BinaryRelation::of(t12).pairs());
      }
    }
    for (ElemSet u : ups) {
      CHECK(limit_check(f, u));
    }
  });
  CHECK(validated > 0);
}

TEST_CASE("limit_check") {
  auto f = build_sheaf(kerpi());
  CHECK(limit_check(f, ElemSet(0)));
  auto r = limit_check(f, ElemSet(0b11));
  CHECK(r);
  CHECK(r.sections == 4);
  auto t = test::two();
  auto g = build_sheaf(
      StalkAssignment(test::chain2(), t, {Congruence::diagonal(t), Congruence::diagonal(t)}));
  CHECK_THROWS_AS(limit_check(g, ElemSet(0b01)), PreconditionError);
}

TEST_CASE("direct_image") {
  auto sa = kerpi();
  auto f = build_sheaf(sa);
  auto id = direct_image(f, MonotoneMap::identity(f.base()));
  CHECK(id.assignment().stalks() == sa.stalks());

  auto pt = direct_image(f, MonotoneMap::to_point(f.base()));
  CHECK(pt.base().size() == 1);
  CHECK(pt.stalk(0).algebra->size() == 4);
  CHECK(pt.assignment().stalk(0).is_diagonal());

  CHECK_THROWS_AS(direct_image(build_sheaf(noncommuting()),
                               MonotoneMap::to_point(test::antichain2())),
                  SoftnessRequiredError);
  CHECK_THROWS_AS(direct_image(f, MonotoneMap::to_point(test::chain2())), PreconditionError);
}

TEST_CASE("direct images along all monotone maps keep kernels") {
  auto targets = posets_up_to(2);
  for_each_small_assignment([&](const StalkAssignment& sa) {
    auto v = validate_frame_hom(sa);
    if (!v.ok() || sa.base().size() > 2) {
      return;
    }
    auto f = build_sheaf(*v.hom);
    for (const auto& z : targets) {
      for (const auto& m : enumerate_monotone_maps(f.base(), z)) {
        auto g = direct_image(f, m);
        CHECK(direct_image_mismatches(f, m, g).empty());
        CHECK(is_soft(g));
        for (ElemSet k : enumerate_sets(z, Direction::up)) {
          CHECK(theta_of_sheaf_at(g, k) == theta_of_sheaf_at(f, m.preimage(k)));
        }
      }
    }
  });
}
