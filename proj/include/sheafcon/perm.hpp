#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <optional>
#include <utility>
#include <vector>

#include "sheafcon/algebra.hpp"

namespace sheafcon {

  /// A binary relation on the carrier of an algebra. Compositions of
  /// congruences need not be congruences, hence a separate type.
  class BinaryRelation {
   public:
    explicit BinaryRelation(AlgebraPtr algebra);
    static BinaryRelation of(const Congruence& c);

    const AlgebraPtr& algebra() const { return algebra_; }
    std::size_t size() const { return n_; }
    bool contains(std::size_t a, std::size_t b) const { return bits_[a * n_ + b] != 0; }
    void insert(std::size_t a, std::size_t b) { bits_[a * n_ + b] = 1; }
    std::size_t pair_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
    bool subset_of(const BinaryRelation& other) const;

    bool operator==(const BinaryRelation& other) const {
      return algebra_ == other.algebra_ && bits_ == other.bits_;
    }

   private:
    AlgebraPtr algebra_;
    std::size_t n_ = 0;
    std::vector<unsigned char> bits_;
  };

  /// {(a,c) | exists b: (a,b) in first and (b,c) in second}. The left
  /// argument is applied first. Throws AlgebraMismatchError.
  BinaryRelation compose(const Congruence& first, const Congruence& second);
  BinaryRelation compose(const BinaryRelation& first, const BinaryRelation& second);

  struct CommuteResult {
    bool commutes = true;
    /// Lexicographically least pair in the symmetric difference of the two
    /// compositions.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    explicit operator bool() const { return commutes; }
  };

  /// Throws AlgebraMismatchError.
  CommuteResult commute(const Congruence& x, const Congruence& y);

  struct GeneratedSublattice {
    std::vector<Congruence> members;  // sorted like CongruenceLattice
    bool is_distributive = true;
    bool pairwise_commuting = true;
    /// Failing triple (indices into members), if not distributive.
    std::optional<std::array<std::size_t, 3>> distributivity_witness;
    std::optional<std::pair<std::size_t, std::size_t>> commuting_witness;
  };

  /// Closure under binary meet and join, with brute-force distributivity and
  /// commutation tests. Throws AlgebraMismatchError, PreconditionError when
  /// the list is empty.
  GeneratedSublattice generated_sublattice(const std::vector<Congruence>& congs);

  struct CrtConstraint {
    Congruence theta;
    std::size_t target;
  };

  /// First element a (in carrier order) with (a, a_i) in theta_i for all i.
  /// Both preconditions are checked and reported with witnesses as
  /// PreconditionError; an exhausted search under valid preconditions is an
  /// InternalInvariantError.
  std::size_t crt_solve(const AlgebraPtr& a, const std::vector<CrtConstraint>& constraints);

  /// The precondition check alone: empty when crt_solve would accept, else the
  /// reason.
  std::string crt_precondition_violation(const AlgebraPtr& a,
                                         const std::vector<CrtConstraint>& constraints);

}  // namespace sheafcon
