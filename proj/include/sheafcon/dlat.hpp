#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafcon/algebra.hpp"
#include "sheafcon/poset.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon {

  /// Signature of bounded lattices: meet, join (binary), bot, top (constants).
  const Signature& lattice_signature();

  /// A bounded distributive lattice with symbols meet, join, bot, top.
  /// Lattice axioms, bounds and distributivity are checked exhaustively.
  class DistLattice {
   public:
    /// Throws NotLatticeError (missing symbol, axiom or distributivity
    /// failure, with witness) or SizeLimitError beyond 64 elements.
    static DistLattice make(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }
    std::size_t size() const { return algebra_->size(); }
    std::size_t meet(std::size_t a, std::size_t b) const { return algebra_->apply(meet_, a, b); }
    std::size_t join(std::size_t a, std::size_t b) const { return algebra_->apply(join_, a, b); }
    std::size_t bot() const { return algebra_->apply(bot_); }
    std::size_t top() const { return algebra_->apply(top_); }
    bool leq(std::size_t a, std::size_t b) const { return meet(a, b) == a; }
    /// Join-irreducible elements in carrier order.
    std::vector<std::size_t> join_irreducibles() const;
    /// The carrier as a poset under the lattice order.
    FinitePoset order() const;

   private:
    AlgebraPtr algebra_;
    std::size_t meet_ = 0;
    std::size_t join_ = 0;
    std::size_t bot_ = 0;
    std::size_t top_ = 0;
  };

  /// Validates that a FinitePoset is a lattice and tabulates its operations.
  /// Throws NotLatticeError naming a pair without a meet or join.
  AlgebraPtr lattice_from_order(const FinitePoset& p, const std::string& name);

  /// The lattice of down-sets of p under intersection and union; carrier
  /// names are the formatted sets, in increasing bit order.
  DistLattice down_set_lattice(const FinitePoset& p, const std::string& name = "");

  /// Finite Priestley (Birkhoff) dual. Points p0, p1, ... correspond to the
  /// join-irreducibles j0, j1, ... in carrier order; point i is the prime
  /// ideal {a | j_i not <= a}. X is ordered by inclusion of prime ideals, and
  /// a-hat = {p | a not in p} is a down-set.
  struct PriestleyDual {
    DistLattice lattice;
    FinitePoset x;
    std::vector<std::size_t> join_irreducibles;
    std::vector<ElemSet> prime_ideals;  // subsets of the carrier
    std::vector<ElemSet> hat;           // a -> a-hat, subsets of X
  };

  /// Throws InternalInvariantError if a |-> a-hat fails to be a bounded
  /// lattice isomorphism onto the down-sets of X.
  PriestleyDual priestley_dual(const DistLattice& l);

  /// theta_C = {(a,b) | a-hat n C = b-hat n C}.
  Congruence cong_from_closed(const PriestleyDual& d, ElemSet c);
  /// C_theta = {x | for all (a,b) in theta: x in a-hat <=> x in b-hat}.
  /// Accepts a congruence on any algebra with the lattice's carrier.
  ElemSet closed_from_cong(const PriestleyDual& d, const Congruence& theta);

  struct SpReport {
    bool holds = true;
    std::size_t points = 0;
    std::size_t congruences = 0;
    std::string failure;
    explicit operator bool() const { return holds; }
  };

  /// C |-> theta_C is an inclusion-reversing bijection from subsets of X onto
  /// Con A, inverse to closed_from_cong; in particular |Con A| = 2^|X|.
  SpReport sp_check(const PriestleyDual& d);

  struct InterpolationResult {
    bool holds = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    explicit operator bool() const { return holds; }
  };

  /// For x1 in C1 and x2 in C2 comparable either way, some z in C1 n C2
  /// lies between them. The witness is the offending (x1, x2).
  InterpolationResult interpolation_condition(const FinitePoset& x, ElemSet c1, ElemSet c2);

  /// A total map q: X -> Y. Continuity is automatic at finite scale.
  struct Decomposition {
    FinitePoset x;
    FinitePoset y;
    std::vector<std::size_t> map;
  };

  /// Throws RangeError unless map is total on X with values in Y.
  void validate_decomposition(const Decomposition& q);

  /// For x1 <= x2 there is z with x1 <= z <= x2 and q(x1), q(x2) <= q(z).
  /// The witness is the offending (x1, x2).
  InterpolationResult is_interpolating_decomposition(const Decomposition& q);

  /// The assignment y |-> theta_{q^-1(up y)}; monotone for every q.
  /// Throws PreconditionError when q's X is not the dual's X.
  StalkAssignment psi_assignment(const PriestleyDual& d, const Decomposition& q);

  /// psi_assignment validated as a frame homomorphism. Throws
  /// NotInterpolatingError with witness, InternalInvariantError if an
  /// interpolating q fails validation.
  FrameHom psi_of_q(const PriestleyDual& d, const Decomposition& q);

  /// q_F(x) = the y with the intersection of the down-sets U such that x lies
  /// outside C(theta_F(Y \ U)) equal to down(y). Throws PreconditionError
  /// when F is not over the dual's lattice or fails validation,
  /// SoftnessRequiredError when F is not soft, InternalInvariantError when
  /// no such y exists.
  Decomposition q_of_sheaf(const PriestleyDual& d, const SheafRep& f);

  /// f o q, for a monotone f out of q's Y.
  Decomposition compose(const Decomposition& q, const MonotoneMap& f);

}  // namespace sheafcon
