#pragma once

// Brute-force reference computations used by the tests and the acceptance
// suite. Each function works from the definitions alone and shares no
// algorithm with the library code it is compared against.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "sheafcon/algebra.hpp"
#include "sheafcon/mv.hpp"
#include "sheafcon/perm.hpp"
#include "sheafcon/poset.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon::oracle {

  using Labels = std::vector<std::size_t>;

  /// Calls `visit` on every partition of {0..n-1} as a restricted growth
  /// string. `visit` returns false to stop early.
  void for_each_partition(std::size_t n, const std::function<bool(const Labels&)>& visit);

  /// Compatibility straight from the definition: related argument tuples
  /// give related results, for every operation.
  bool compatible(const Algebra& a, const Labels& labels);

  /// All congruences as canonical label vectors, sorted.
  std::vector<Labels> congruences(const Algebra& a);

  /// Least congruence (by refinement) among congruences(a) relating x and y.
  Labels principal(const Algebra& a, std::size_t x, std::size_t y);

  /// {(a,c) | exists b: (a,b) in r, (b,c) in s} over all triples.
  std::vector<std::pair<std::size_t, std::size_t>> compose(const Labels& r, const Labels& s);

  /// Every subset of p's elements that is closed in direction d, sorted.
  std::vector<ElemSet> closed_sets(const FinitePoset& p, Direction d);

  /// Filters of a finite lattice of sets (nonempty, up-closed, meet-closed),
  /// each given as the set of indices into `lattice`.
  std::vector<ElemSet> filters(const std::vector<ElemSet>& lattice);

  /// Prime ideals of a bounded lattice from the definition, by subset
  /// filtering over the carrier: nonempty proper down-closed join-closed
  /// sets whose complement is meet-closed.
  std::vector<ElemSet> lattice_prime_ideals(const Algebra& lattice);

  /// All MV-ideals by subset filtering.
  std::vector<ElemSet> mv_ideals(const MVAlgebra& a);

  /// Every function on `s` with values in the stalks that agrees with some
  /// s_a on up(y) n s for every y in s (not only the minimal ones).
  std::vector<Section> sections(const SheafRep& f, ElemSet s);

  /// All elements a with (a, a_i) in theta_i for each constraint.
  std::vector<std::size_t> crt_solutions(const Algebra& a, const std::vector<CrtConstraint>& cs);

  /// Is the lattice of congruences `members` distributive, by triples.
  bool distributive(const std::vector<Congruence>& members);

}  // namespace sheafcon::oracle
