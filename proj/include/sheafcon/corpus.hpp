#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sheafcon/algebra.hpp"
#include "sheafcon/mv.hpp"
#include "sheafcon/poset.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon {

  inline constexpr std::uint64_t default_seed = 20240607;

  /// All posets on exactly n elements up to isomorphism, elements named
  /// y0, y1, ... and numbered along a linear extension. Deterministic order.
  /// Throws InvalidSizeError for n > 6.
  std::vector<FinitePoset> posets_of_size(std::size_t n);
  /// All posets with 1..n elements up to isomorphism, by increasing size.
  std::vector<FinitePoset> posets_up_to(std::size_t n);

  /// All bounded lattices with 1..n elements up to isomorphism, as algebras
  /// over lattice_signature(), named lat<size>_<k>.
  std::vector<AlgebraPtr> bounded_lattices_up_to(std::size_t n);

  /// Lukasiewicz chains L1..L11 and the products of chains with at most 12
  /// elements that have at least two nontrivial factors.
  std::vector<MVAlgebra> mv_corpus();

  /// `count` random algebras with carrier 1..4 and up to 4 operations of
  /// arity 0..2, drawn from std::mt19937_64 seeded with `seed`.
  std::vector<AlgebraPtr> random_algebras(std::size_t count, std::uint64_t seed);

  /// Every monotone map from `base` into the congruences in `con`, as stalk
  /// assignments, in lexicographic order of congruence indices.
  std::vector<StalkAssignment> monotone_assignments(const FinitePoset& base,
                                                    const CongruenceLattice& con);

}  // namespace sheafcon
