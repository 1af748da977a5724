#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sheafcon/algebra.hpp"
#include "sheafcon/dlat.hpp"
#include "sheafcon/poset.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon {

  /// Signature of MV-algebras: oplus (binary), neg (unary), zero (constant).
  const Signature& mv_signature();

  /// A finite MV-algebra over mv_signature() with the derived operations
  /// x (-) y = neg(neg x (+) y), join, meet and one tabulated alongside.
  class MVAlgebra {
   public:
    /// Throws NotMVAlgebraError with the violated axiom and witness, or
    /// SizeLimitError beyond 64 elements.
    static MVAlgebra make(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::string& name() const { return algebra_->name(); }
    std::size_t size() const { return algebra_->size(); }
    std::size_t oplus(std::size_t x, std::size_t y) const { return algebra_->apply(oplus_, x, y); }
    std::size_t neg(std::size_t x) const { return algebra_->apply(neg_, x); }
    std::size_t zero() const { return algebra_->apply(zero_); }
    std::size_t one() const { return neg(zero()); }
    std::size_t ominus(std::size_t x, std::size_t y) const { return ominus_[x * size() + y]; }
    std::size_t join(std::size_t x, std::size_t y) const { return join_[x * size() + y]; }
    std::size_t meet(std::size_t x, std::size_t y) const { return meet_[x * size() + y]; }
    bool leq(std::size_t x, std::size_t y) const { return meet(x, y) == x; }

    /// The bounded distributive lattice (A, meet, join, 0, 1).
    DistLattice lattice_reduct() const;

   private:
    AlgebraPtr algebra_;
    std::size_t oplus_ = 0;
    std::size_t neg_ = 0;
    std::size_t zero_ = 0;
    std::vector<std::size_t> ominus_;
    std::vector<std::size_t> join_;
    std::vector<std::size_t> meet_;
  };

  /// The Lukasiewicz chain {0, 1/n, ..., 1}. Throws InvalidSizeError for n = 0.
  MVAlgebra luk_chain(std::size_t n);

  /// Componentwise product; the empty product is the one-element algebra.
  MVAlgebra mv_product(const std::vector<MVAlgebra>& factors);

  /// Contains 0, is down-closed and closed under oplus.
  bool is_mv_ideal(const MVAlgebra& a, ElemSet s);
  /// A proper ideal with a meet b in I implying a in I or b in I.
  bool is_prime_mv_ideal(const MVAlgebra& a, ElemSet s);

  /// All ideals, sorted by bit pattern. Every ideal of a finite MV-algebra
  /// is the down-set of an idempotent element.
  std::vector<ElemSet> mv_ideals(const MVAlgebra& a);

  /// theta_I: a ~ b iff (a (-) b) (+) (b (-) a) lies in I.
  Congruence ideal_congruence(const MVAlgebra& a, ElemSet ideal);

  struct MVSpectrum {
    FinitePoset y;                  // prime ideals ordered by inclusion
    std::vector<ElemSet> primes;    // point -> ideal, sorted by bit pattern
    bool is_root_system = true;
    std::vector<std::size_t> m;     // point -> its unique maximal point above
    FinitePoset z;                  // maximal points, trivially ordered
    std::vector<std::size_t> z_of;  // point of z -> point of y
  };

  /// Points are named P0, P1, ... . Throws InternalInvariantError when a
  /// point lies below zero or several maximal points.
  MVSpectrum mv_spectrum(const MVAlgebra& a);

  /// m as a monotone map Y -> Z.
  MonotoneMap max_map(const MVSpectrum& s);

  struct LambdaReport {
    bool holds = true;
    std::size_t con_size = 0;
    std::size_t image_size = 0;
    std::string failure;
    explicit operator bool() const { return holds; }
  };

  /// lambda(a) = theta(0,a): lambda(0) is the diagonal, meets and joins are
  /// preserved, and every congruence is some lambda(a).
  LambdaReport lambda_check(const MVAlgebra& a);

  struct KMap {
    PriestleyDual dual;  // of the lattice reduct
    MVSpectrum spectrum;
    Decomposition q;     // X -> Y
  };

  /// k(p) = {a | for all c in p, a (+) c in p}. Throws InternalInvariantError
  /// when k(p) is not a prime MV-ideal or k is not interpolating.
  KMap k_map(const MVAlgebra& a);

  struct MVSheaf {
    KMap k;
    FrameHom hom;      // psi_k, rebound to the MV-algebra
    SheafRep sheaf;    // over Y-up
    SheafRep direct;   // direct image along m over Z
  };

  /// Builds psi_k and its sheaf, checks its stalks against the ideal
  /// congruences, and takes the direct image along m. Throws
  /// InternalInvariantError if any of the sheaves fails to be soft with
  /// global sections isomorphic to A.
  MVSheaf mv_sheaf(const MVAlgebra& a);

}  // namespace sheafcon
