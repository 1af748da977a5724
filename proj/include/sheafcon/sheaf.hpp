#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sheafcon/algebra.hpp"
#include "sheafcon/poset.hpp"

namespace sheafcon {

  /// A monotone map y |-> theta_y from a finite poset Y into Con A.
  ///
  /// At finite scale a map theta on up-sets is determined by its values on
  /// principal up-sets: theta(K) is the intersection of theta_y over y in K.
  class StalkAssignment {
   public:
    /// Throws MonotonicityError (with the witness pair y <= y'),
    /// AlgebraMismatchError, RangeError.
    StalkAssignment(FinitePoset base, AlgebraPtr algebra, std::vector<Congruence> stalks);

    const FinitePoset& base() const { return base_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    const Congruence& stalk(std::size_t y) const { return stalks_[y]; }
    const std::vector<Congruence>& stalks() const { return stalks_; }

    /// Intersection of theta_y over y in k; the full congruence for k empty.
    Congruence theta(ElemSet k) const;

    bool operator==(const StalkAssignment& other) const {
      return base_ == other.base_ && algebra_ == other.algebra_ && stalks_ == other.stalks_;
    }

   private:
    FinitePoset base_;
    AlgebraPtr algebra_;
    std::vector<Congruence> stalks_;
  };

  /// Validated StalkAssignment whose derived map on up-sets is a frame
  /// homomorphism (KS Y-up)^op -> Con A with pairwise commuting image.
  struct FrameHom {
    StalkAssignment assignment;
    std::size_t up_sets_checked = 0;
    std::size_t image_size = 0;
  };

  struct FrameHomFailure {
    enum class Kind {
      empty_not_full,       // theta(empty) != full congruence
      whole_not_diagonal,   // theta(Y) != diagonal
      meet_not_preserved,   // theta(K1 u K2) != theta(K1) ^ theta(K2)
      join_not_preserved,   // theta(K1 n K2) != theta(K1) v theta(K2)
      not_commuting,        // theta(K1), theta(K2) do not commute
    };
    Kind kind;
    ElemSet k1;
    ElemSet k2;
    std::string message;
  };

  std::string to_string(FrameHomFailure::Kind kind);

  struct FrameHomValidation {
    std::optional<FrameHom> hom;
    std::optional<FrameHomFailure> failure;
    bool ok() const { return hom.has_value(); }
  };

  /// Checks every FrameHom condition over all pairs of up-sets and reports
  /// the first violation.
  FrameHomValidation validate_frame_hom(const StalkAssignment& sa);

  /// A section over a subset S of the base: values[y] is a block index of
  /// theta_y (an element of the stalk A/theta_y) for y in S; entries outside
  /// the domain are zero.
  struct Section {
    ElemSet domain;
    std::vector<std::size_t> values;
    bool operator==(const Section&) const = default;
    auto operator<=>(const Section&) const = default;
    Section restrict_to(ElemSet s) const;
  };

  /// The etale space of a stalk assignment: stalks A/theta_y and canonical
  /// sections s_a(y) = a/theta_y. Built from any monotone assignment, whether
  /// or not it is a frame homomorphism.
  class SheafRep {
   public:
    explicit SheafRep(StalkAssignment assignment);

    const StalkAssignment& assignment() const { return assignment_; }
    const FinitePoset& base() const { return assignment_.base(); }
    const AlgebraPtr& algebra() const { return assignment_.algebra(); }
    const QuotientResult& stalk(std::size_t y) const { return stalks_[y]; }
    std::size_t germ(std::size_t a, std::size_t y) const {
      return assignment_.stalk(y).block_of(a);
    }
    /// s_a restricted to `domain` (the whole base by default).
    Section canonical_section(std::size_t a) const;
    Section canonical_section(std::size_t a, ElemSet domain) const;
    /// Human-readable name of a section, e.g. "[y0={0,m};y1={1}]".
    std::string section_name(const Section& s) const;

   private:
    StalkAssignment assignment_;
    std::vector<QuotientResult> stalks_;
  };

  SheafRep build_sheaf(const StalkAssignment& sa);
  SheafRep build_sheaf(const FrameHom& hom);

  /// All continuous sections over s, sorted. A section is continuous iff on
  /// the cone of each minimal element of s it agrees with some s_a.
  std::vector<Section> enumerate_sections(const SheafRep& f, ElemSet s);

  struct SectionAlgebra {
    AlgebraPtr algebra;
    std::vector<Section> sections;  // carrier index -> section
  };

  /// Gamma(S) as a subalgebra of the product of the stalks over s. Throws
  /// InternalInvariantError if the sections fail to be closed under the
  /// pointwise operations.
  SectionAlgebra sections_over(const SheafRep& f, ElemSet s);

  /// ||s_a = s_b||: the points where the germs of a and b agree.
  ElemSet equalizer(const SheafRep& f, std::size_t a, std::size_t b);
  /// By element names. Throws UnknownElementError.
  ElemSet equalizer(const SheafRep& f, const std::string& a, const std::string& b);

  /// theta_F(k) = {(a,b) | k subset ||s_a = s_b||}, computed from equalizers.
  Congruence theta_of_sheaf_at(const SheafRep& f, ElemSet k);
  /// theta_F on principal up-sets, as a stalk assignment.
  StalkAssignment theta_of_sheaf(const SheafRep& f);

  struct SoftnessReport {
    bool soft = true;
    std::optional<ElemSet> up_set;
    std::optional<Section> unextendable;
    explicit operator bool() const { return soft; }
  };

  /// Soft iff every section over every nonempty up-set is the restriction of
  /// some s_a, the global sections of the represented algebra.
  SoftnessReport is_soft(const SheafRep& f);

  struct EtaReport {
    bool injective = true;
    bool surjective = true;
    bool homomorphism = true;
    std::size_t global_sections = 0;
    std::string failure;
    bool isomorphism() const { return injective && surjective && homomorphism; }
  };

  /// Checks that a |-> s_a is a bijective homomorphism A -> Gamma(Y).
  EtaReport eta_check(const SheafRep& f);

  struct GlobalSectionsReport {
    bool holds = true;
    EtaReport eta;
    std::optional<ElemSet> kernel_mismatch;
    std::string failure;
    explicit operator bool() const { return holds; }
  };

  /// eta is an isomorphism and, for every up-set K, the kernel of
  /// a |-> s_a|K equals theta(K).
  GlobalSectionsReport global_sections_check(const FrameHom& hom);

  struct RoundtripReport {
    bool holds = true;
    std::string failure;
    explicit operator bool() const { return holds; }
  };

  /// F_theta is soft and theta_{F_theta} = theta.
  RoundtripReport roundtrip_main(const FrameHom& hom);

  /// Up-sets K of the target on which the kernel of A -> Gamma_G(K) differs
  /// from theta_F(f^-1 K), or where |Gamma_G(K)| != |Gamma_F(f^-1 K)|.
  std::vector<ElemSet> direct_image_mismatches(const SheafRep& f, const MonotoneMap& map,
                                               const SheafRep& g);

  /// The sheaf on the target built from z |-> theta_F(f^-1(up z)), with the
  /// kernel postcondition verified. Throws SoftnessRequiredError when F is
  /// not soft or its assignment does not validate, PreconditionError when the
  /// map's source is not F's base, InternalInvariantError when the
  /// postcondition fails.
  SheafRep direct_image(const SheafRep& f, const MonotoneMap& map);

  struct LimitReport {
    bool holds = true;
    std::size_t sections = 0;
    std::size_t consistent_families = 0;
    std::string failure;
    explicit operator bool() const { return holds; }
  };

  /// Compares Gamma(U) with the inverse limit of Gamma(K) over the up-sets
  /// K subset U under restriction. Throws PreconditionError if u is not an
  /// up-set.
  LimitReport limit_check(const SheafRep& f, ElemSet u);

}  // namespace sheafcon
