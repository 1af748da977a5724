#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafcon/elemset.hpp"

namespace sheafcon {

  enum class Direction { up, down };

  /// A finite partial order. At finite scale the patch topology is discrete,
  /// so a FinitePoset is all there is to a compact ordered space: the opens
  /// of Y-up are the up-sets, the opens of Y-down are the down-sets, and the
  /// compact-saturated sets of Y-up are again the up-sets.
  ///
  /// Elements are indexed 0..size()-1 in input order; names are opaque
  /// tokens compared for equality only.
  class FinitePoset {
   public:
    FinitePoset() = default;

    /// Builds the reflexive-transitive closure of `relation` (pairs x <= y).
    /// Throws DuplicateElementError, UnknownElementError, CycleError.
    static FinitePoset make(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& relation);
    /// Same, with relation pairs given by index.
    static FinitePoset from_indices(std::vector<std::string> elements,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& relation);
    static FinitePoset chain(std::size_t n, const std::string& prefix = "y");
    static FinitePoset antichain(std::size_t n, const std::string& prefix = "y");

    std::size_t size() const { return names_.size(); }
    bool leq(std::size_t x, std::size_t y) const { return leq_[x * size() + y] != 0; }
    bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
    bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }
    bool covers(std::size_t x, std::size_t y) const;  // x < y with nothing between

    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> find(const std::string& name) const;
    /// Throws UnknownElementError.
    std::size_t index(const std::string& name) const;

    ElemSet all() const { return ElemSet::full(size()); }
    ElemSet up(std::size_t x) const { return up_[x]; }
    ElemSet down(std::size_t x) const { return down_[x]; }
    ElemSet closure(ElemSet s, Direction d) const;
    bool is_closed(ElemSet s, Direction d) const { return closure(s, d) == s; }
    ElemSet minimal(ElemSet s) const;
    ElemSet maximal(ElemSet s) const;

    /// Covering pairs (x, y), x < y, in lexicographic index order.
    std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;
    /// The order with the same elements reversed.
    FinitePoset dual() const;

    bool operator==(const FinitePoset& other) const {
      return names_ == other.names_ && leq_ == other.leq_;
    }

   private:
    void finish();

    std::vector<std::string> names_;
    std::vector<unsigned char> leq_;  // row-major size()*size()
    std::vector<ElemSet> up_;
    std::vector<ElemSet> down_;
  };

  /// A total map between finite posets, validated to be order preserving.
  class MonotoneMap {
   public:
    /// Throws NotMonotoneError (with the offending pair) or RangeError.
    MonotoneMap(FinitePoset source, FinitePoset target, std::vector<std::size_t> mapping);

    const FinitePoset& source() const { return source_; }
    const FinitePoset& target() const { return target_; }
    std::size_t operator()(std::size_t x) const { return mapping_[x]; }
    const std::vector<std::size_t>& mapping() const { return mapping_; }
    ElemSet preimage(ElemSet s) const;
    ElemSet image(ElemSet s) const;

    static MonotoneMap identity(const FinitePoset& p);
    static MonotoneMap to_point(const FinitePoset& p, const std::string& point = "*");

   private:
    FinitePoset source_;
    FinitePoset target_;
    std::vector<std::size_t> mapping_;
  };

  /// All up-sets (Direction::up) or down-sets of `p`, in increasing order of
  /// their bit pattern. Up-sets of a finite poset are the compact-saturated
  /// sets of Y-up and the closed sets of Y-down; down-sets are the opens of
  /// Y-down.
  std::vector<ElemSet> enumerate_sets(const FinitePoset& p, Direction d);

  /// Closure of a subset given by element names. Throws UnknownElementError.
  ElemSet closure(const FinitePoset& p, const std::vector<std::string>& s, Direction d);

  std::vector<std::string> set_names(const FinitePoset& p, ElemSet s);
  std::string format_set(const FinitePoset& p, ElemSet s);

  /// Outcome of the finite Hofmann-Mislove check on a poset.
  struct HofmannMisloveReport {
    bool holds = false;
    std::size_t up_sets = 0;
    std::size_t filters = 0;
    /// Pairs (up-set index, filter index) of the witnessed bijection.
    std::vector<std::pair<std::size_t, std::size_t>> bijection;
    std::string counterexample;
  };

  /// Checks that K |-> {U up-set : K subset U} is an order embedding of the
  /// up-sets into the filters of the up-set lattice whose image is every
  /// filter. In a finite frame every filter is Scott-open.
  HofmannMisloveReport hofmann_mislove_check(const FinitePoset& p);

  /// All monotone maps p -> q, in lexicographic order of the mapping.
  std::vector<MonotoneMap> enumerate_monotone_maps(const FinitePoset& p, const FinitePoset& q);

}  // namespace sheafcon
