#include <algorithm>

#include "doctest.h"
#include "sheafcon/corpus.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/mv.hpp"
#include "sheafcon/oracle.hpp"
#include "sheafcon/perm.hpp"

using namespace sheafcon;

namespace {

  std::size_t el(const MVAlgebra& a, const std::string& name) {
    return a.algebra()->index(name);
  }

  /// Brute-force primeness: proper, and a meet b in I forces a or b in I.
  bool prime_by_definition(const MVAlgebra& a, ElemSet s) {
    if (s.contains(a.one())) {
      return false;
    }
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        if (s.contains(a.meet(x, y)) && !s.contains(x) && !s.contains(y)) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("luk_chain") {
  auto l1 = luk_chain(1);
  CHECK(l1.size() == 2);
  CHECK(congruence_lattice(l1.algebra()).size() == 2);

  auto l2 = luk_chain(2);
  CHECK(l2.size() == 3);
  CHECK(l2.oplus(el(l2, "1/2"), el(l2, "1/2")) == el(l2, "1"));
  CHECK(l2.neg(el(l2, "1/2")) == el(l2, "1/2"));
  CHECK(l2.ominus(el(l2, "1"), el(l2, "1/2")) == el(l2, "1/2"));

  auto l4 = luk_chain(4);
  CHECK(l4.algebra()->carrier() == std::vector<std::string>{"0", "1/4", "1/2", "3/4", "1"});
  CHECK_THROWS_AS(luk_chain(0), InvalidSizeError);
}

TEST_CASE("MVAlgebra::make rejects non MV-algebras") {
  // Max as oplus on a 3-chain fails x (+) neg x = 1 at the middle element.
  auto bad = Algebra::make("kleene", {"0", "m", "1"}, mv_signature(),
                           {{0, 1, 2, 1, 1, 2, 2, 2, 2}, {2, 1, 0}, {0}});
  CHECK_THROWS_AS(MVAlgebra::make(bad), NotMVAlgebraError);
  CHECK_THROWS_AS(MVAlgebra::make(luk_chain(2).lattice_reduct().algebra()), NotMVAlgebraError);
}

TEST_CASE("products of chains are MV-algebras") {
  auto p = mv_product({luk_chain(1), luk_chain(2)});
  CHECK(p.size() == 6);
  CHECK(p.name() == "L1xL2");
  CHECK_NOTHROW(MVAlgebra::make(product({luk_chain(2).algebra(), luk_chain(3).algebra()}).algebra));
  CHECK(mv_product({}).size() == 1);
}

TEST_CASE("mv_ideals agrees with the subset oracle") {
  for (const auto& a : mv_corpus()) {
    auto ideals = mv_ideals(a);
    CHECK(ideals == oracle::mv_ideals(a));
    for (ElemSet i : ideals) {
      CHECK(is_mv_ideal(a, i));
      CHECK(is_prime_mv_ideal(a, i) == prime_by_definition(a, i));
    }
  }
}

TEST_CASE("ideal congruences are joins of principal congruences") {
  for (const auto& a : mv_corpus()) {
    auto con = congruence_lattice(a.algebra());
    CHECK(mv_ideals(a).size() == con.size());
    for (ElemSet i : mv_ideals(a)) {
      auto t = Congruence::diagonal(a.algebra());
      for (std::size_t c : i.members()) {
        t = t.join(principal_congruence(a.algebra(), a.zero(), c));
      }
      CHECK(ideal_congruence(a, i) == t);
      // The ideal is the block of zero.
      ElemSet zero_block;
      for (std::size_t x = 0; x < a.size(); ++x) {
        if (t.related(x, a.zero())) {
          zero_block.insert(x);
        }
      }
      CHECK(zero_block == i);
    }
  }
}

TEST_CASE("mv_spectrum examples") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto s = mv_spectrum(luk_chain(n));
    CHECK(s.y.size() == 1);
    CHECK(s.primes[0] == ElemSet(1));
  }
  auto s = mv_spectrum(mv_product({luk_chain(1), luk_chain(2)}));
  CHECK(s.y.size() == 2);
  CHECK_FALSE(s.y.comparable(0, 1));
  CHECK(s.is_root_system);
  CHECK(s.z.size() == 2);
}

TEST_CASE("spectra of the corpus are root systems") {
  for (const auto& a : mv_corpus()) {
    auto s = mv_spectrum(a);
    CHECK(s.is_root_system);
    std::vector<ElemSet> primes;
    for (ElemSet i : oracle::mv_ideals(a)) {
      if (prime_by_definition(a, i)) {
        primes.push_back(i);
      }
    }
    CHECK(s.primes == primes);
    auto m = max_map(s);
    for (std::size_t p = 0; p < s.y.size(); ++p) {
      CHECK(s.y.leq(p, s.z_of[m(p)]));
    }
  }
}

TEST_CASE("lambda_check") {
  auto l2 = luk_chain(2);
  CHECK(principal_congruence(l2.algebra(), l2.zero(), l2.zero()).is_diagonal());
  CHECK(principal_congruence(l2.algebra(), el(l2, "0"), el(l2, "1/2")).is_full());
  CHECK(principal_congruence(l2.algebra(), el(l2, "0"), el(l2, "1")).is_full());
  for (const auto& a : mv_corpus()) {
    auto r = lambda_check(a);
    CHECK(r);
    CHECK(r.image_size == r.con_size);
    CHECK(oracle::distributive(congruence_lattice(a.algebra()).members()));
  }
}

TEST_CASE("k_map examples") {
  auto k1 = k_map(luk_chain(1));
  CHECK(k1.dual.x.size() == 1);
  CHECK(k1.q.map == std::vector<std::size_t>{0});

  auto k2 = k_map(luk_chain(2));
  CHECK(k2.dual.x.size() == 2);
  CHECK(k2.dual.x.less(0, 1));
  CHECK(k2.spectrum.y.size() == 1);
  CHECK(k2.q.map == std::vector<std::size_t>{0, 0});

  auto k3 = k_map(mv_product({luk_chain(1), luk_chain(2)}));
  CHECK(k3.dual.x.size() == 3);
  CHECK(k3.spectrum.y.size() == 2);
  auto image = k3.q.map;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  CHECK(image.size() == 2);
}

TEST_CASE("k_map is an interpolating decomposition on the corpus") {
  for (const auto& a : mv_corpus()) {
    auto k = k_map(a);
    CHECK(is_interpolating_decomposition(k.q));
    for (std::size_t x = 0; x < k.dual.x.size(); ++x) {
      // k(p) = {a | a (+) c in p for all c in p}.
      ElemSet p = k.dual.prime_ideals[x];
      ElemSet kp;
      for (std::size_t e = 0; e < a.size(); ++e) {
        bool in = true;
        for (std::size_t c : p.members()) {
          in = in && p.contains(a.oplus(e, c));
        }
        if (in) {
          kp.insert(e);
        }
      }
      CHECK(k.spectrum.primes[k.q.map[x]] == kp);
    }
  }
}

TEST_CASE("mv_sheaf") {
  auto l3 = mv_sheaf(luk_chain(3));
  CHECK(l3.sheaf.base().size() == 1);
  CHECK(l3.sheaf.stalk(0).algebra->size() == 4);

  auto p = mv_product({luk_chain(1), luk_chain(2)});
  auto s = mv_sheaf(p);
  REQUIRE(s.sheaf.base().size() == 2);
  std::vector<std::size_t> sizes{s.sheaf.stalk(0).algebra->size(),
                                 s.sheaf.stalk(1).algebra->size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 3});
  CHECK(eta_check(s.sheaf).global_sections == 6);
  CHECK(s.direct.assignment().stalks() == s.sheaf.assignment().stalks());
}

TEST_CASE("mv_sheaf on the corpus") {
  for (const auto& a : mv_corpus()) {
    auto s = mv_sheaf(a);
    CHECK(is_soft(s.sheaf));
    CHECK(is_soft(s.direct));
    CHECK(eta_check(s.sheaf).isomorphism());
    CHECK(eta_check(s.direct).isomorphism());
    for (std::size_t y = 0; y < s.sheaf.base().size(); ++y) {
      CHECK(s.sheaf.assignment().stalk(y)
            == ideal_congruence(a, s.k.spectrum.primes[y]).rebind(s.sheaf.algebra()));
    }
  }
}
