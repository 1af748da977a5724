#pragma once

#include <string>
#include <vector>

#include "sheafcon/algebra.hpp"
#include "sheafcon/dlat.hpp"
#include "sheafcon/poset.hpp"

namespace sheafcon::test {

  /// Bounded lattice {0,1}.
  inline AlgebraPtr two() {
    return lattice_from_order(FinitePoset::make({"0", "1"}, {{"0", "1"}}), "two");
  }

  /// Bounded lattice 0 < m < 1.
  inline AlgebraPtr chain3() {
    return lattice_from_order(FinitePoset::make({"0", "m", "1"}, {{"0", "m"}, {"m", "1"}}),
                              "chain3");
  }

  /// The four-element Boolean lattice 2x2 with its projections.
  inline ProductResult square() { return product({two(), two()}); }

  inline FinitePoset antichain2() { return FinitePoset::make({"y1", "y2"}, {}); }
  inline FinitePoset chain2() { return FinitePoset::make({"y1", "y2"}, {{"y1", "y2"}}); }

  inline Congruence blocks(const AlgebraPtr& a, const std::vector<std::vector<std::string>>& bs) {
    std::vector<std::vector<std::size_t>> idx;
    for (const auto& b : bs) {
      idx.emplace_back();
      for (const auto& e : b) {
        idx.back().push_back(a->index(e));
      }
    }
    return Congruence::from_blocks(a, idx);
  }

}  // namespace sheafcon::test
