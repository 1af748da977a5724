#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sheafcon {

  struct OperationSymbol {
    std::string name;
    std::size_t arity = 0;
    bool operator==(const OperationSymbol&) const = default;
  };

  /// Operation symbols with their arities; constants are arity-0 symbols.
  using Signature = std::vector<OperationSymbol>;

  /// Named-table description of an algebra, as read from the text format.
  struct AlgebraSpec {
    std::string name;
    std::vector<std::string> carrier;
    Signature signature;
    /// symbol -> (argument names -> result name)
    std::map<std::string, std::map<std::vector<std::string>, std::string>> tables;
  };

  class Algebra;
  using AlgebraPtr = std::shared_ptr<const Algebra>;

  /// A finite algebra: carrier 0..size()-1 plus one total table per symbol.
  /// Tables are stored row-major with the first argument most significant.
  /// Algebras are immutable and shared; congruences and homomorphisms refer
  /// to them by pointer identity.
  class Algebra {
   public:
    /// Throws DuplicateElementError, SignatureMismatchError,
    /// ArityMismatchError, PartialTableError, RangeError.
    static AlgebraPtr make(const AlgebraSpec& spec);
    /// Tables given by index. Throws PartialTableError, RangeError,
    /// ArityMismatchError.
    static AlgebraPtr make(std::string name, std::vector<std::string> carrier,
                           Signature signature,
                           std::vector<std::vector<std::size_t>> tables);

    const std::string& name() const { return name_; }
    std::size_t size() const { return carrier_.size(); }
    const std::vector<std::string>& carrier() const { return carrier_; }
    const std::string& element_name(std::size_t a) const { return carrier_.at(a); }
    std::optional<std::size_t> find(const std::string& element) const;
    /// Throws UnknownElementError.
    std::size_t index(const std::string& element) const;

    const Signature& signature() const { return signature_; }
    std::size_t operation_count() const { return signature_.size(); }
    std::size_t arity(std::size_t op) const { return signature_[op].arity; }
    std::optional<std::size_t> find_symbol(const std::string& symbol) const;
    /// Throws SignatureMismatchError.
    std::size_t symbol(const std::string& symbol) const;
    const std::vector<std::size_t>& table(std::size_t op) const { return tables_[op]; }

    std::size_t apply(std::size_t op, std::span<const std::size_t> args) const;
    std::size_t apply(std::size_t op) const { return tables_[op][0]; }
    std::size_t apply(std::size_t op, std::size_t x) const { return tables_[op][x]; }
    std::size_t apply(std::size_t op, std::size_t x, std::size_t y) const {
      return tables_[op][x * size() + y];
    }

    AlgebraSpec to_spec() const;

   private:
    Algebra() = default;

    std::string name_;
    std::vector<std::string> carrier_;
    Signature signature_;
    std::vector<std::vector<std::size_t>> tables_;
  };

  /// Row-major position of an argument tuple; the inverse is decode_tuple.
  std::size_t encode_tuple(std::span<const std::size_t> args, std::size_t n);
  std::vector<std::size_t> decode_tuple(std::size_t code, std::size_t arity, std::size_t n);
  std::size_t int_pow(std::size_t base, std::size_t exp);

  /// Congruence on a finite algebra, stored as a canonical partition: block
  /// labels numbered by first occurrence, so blocks are sorted by their least
  /// member and equal congruences have equal label vectors.
  class Congruence {
   public:
    /// Validates that labels describe a compatible partition.
    /// Throws NotCongruenceError, RangeError.
    static Congruence from_labels(AlgebraPtr algebra, std::span<const std::size_t> labels);
    /// Throws NotCongruenceError, RangeError (blocks must partition the carrier).
    static Congruence from_blocks(AlgebraPtr algebra,
                                  const std::vector<std::vector<std::size_t>>& blocks);
    static Congruence diagonal(AlgebraPtr algebra);
    static Congruence full(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }
    std::size_t size() const { return labels_.size(); }
    bool related(std::size_t a, std::size_t b) const { return labels_[a] == labels_[b]; }
    std::size_t block_of(std::size_t a) const { return labels_[a]; }
    std::size_t block_count() const { return block_count_; }
    const std::vector<std::size_t>& labels() const { return labels_; }
    std::vector<std::vector<std::size_t>> blocks() const;
    /// Least member of each block, in block order.
    std::vector<std::size_t> representatives() const;
    bool is_diagonal() const { return block_count_ == size(); }
    bool is_full() const { return block_count_ <= 1; }

    /// Refinement order: every block of *this lies inside a block of other.
    bool leq(const Congruence& other) const;
    Congruence meet(const Congruence& other) const;
    /// Smallest congruence containing both (transitive closure of the union).
    Congruence join(const Congruence& other) const;

    /// The same partition viewed on another algebra with the same carrier.
    /// Throws AlgebraMismatchError or NotCongruenceError.
    Congruence rebind(AlgebraPtr other) const;

    std::string to_string() const;

    bool operator==(const Congruence& other) const {
      return algebra_ == other.algebra_ && labels_ == other.labels_;
    }
    bool operator<(const Congruence& other) const { return labels_ < other.labels_; }

   private:
    Congruence(AlgebraPtr algebra, std::vector<std::size_t> labels);
    friend Congruence make_congruence_unchecked(AlgebraPtr, std::span<const std::size_t>);

    AlgebraPtr algebra_;
    std::vector<std::size_t> labels_;
    std::size_t block_count_ = 0;
  };

  /// Builds a congruence from labels already known to be compatible.
  /// Canonicalises the labels; compatibility is asserted in debug builds.
  Congruence make_congruence_unchecked(AlgebraPtr algebra, std::span<const std::size_t> labels);

  /// True iff the partition given by `labels` is compatible with every
  /// operation of the algebra.
  bool is_compatible(const Algebra& a, std::span<const std::size_t> labels);

  /// Throws AlgebraMismatchError unless both congruences live on `a`.
  void require_same_algebra(const Congruence& x, const Congruence& y);

  struct CongruenceLimits {
    std::size_t max_carrier = 64;
    std::size_t max_members = 1U << 16;
  };

  /// Con A with index-based lattice operations. Members are ordered by
  /// decreasing number of blocks, then by label vector, so the diagonal comes
  /// first and the full congruence last.
  class CongruenceLattice {
   public:
    explicit CongruenceLattice(std::vector<Congruence> members);

    const AlgebraPtr& algebra() const { return members_.front().algebra(); }
    std::size_t size() const { return members_.size(); }
    const Congruence& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<Congruence>& members() const { return members_; }
    std::optional<std::size_t> find(const Congruence& c) const;
    std::size_t index_of(const Congruence& c) const;

    bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
    std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
    std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
    std::size_t bottom() const { return 0; }
    std::size_t top() const { return size() - 1; }
    /// Covering pairs (i, j) in the refinement order.
    std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;

   private:
    std::vector<Congruence> members_;
    std::vector<unsigned char> leq_;
    std::vector<std::size_t> meet_;
    std::vector<std::size_t> join_;
  };

  struct Homomorphism {
    AlgebraPtr source;
    AlgebraPtr target;
    std::vector<std::size_t> map;
  };

  /// Empty string when h is a homomorphism, otherwise a witness.
  /// Throws SignatureMismatchError or RangeError on malformed input.
  std::string homomorphism_violation(const Homomorphism& h);

  struct ProductResult {
    AlgebraPtr algebra;
    std::vector<Homomorphism> projections;
  };

  /// Componentwise product; carrier in lexicographic order with the first
  /// factor most significant. Throws SignatureMismatchError.
  ProductResult product(const std::vector<AlgebraPtr>& factors);
  /// Product with an explicit signature, which also fixes the empty product.
  ProductResult product(const std::vector<AlgebraPtr>& factors, const Signature& signature);

  struct QuotientResult {
    AlgebraPtr algebra;
    Homomorphism projection;
  };

  /// A/theta; carrier = blocks in canonical order. Throws
  /// ForeignCongruenceError when theta lives on another algebra.
  QuotientResult quotient(const AlgebraPtr& a, const Congruence& theta);

  /// Smallest congruence relating a and b. Throws UnknownElementError.
  Congruence principal_congruence(const AlgebraPtr& a, std::size_t x, std::size_t y);
  Congruence principal_congruence(const AlgebraPtr& a, const std::string& x, const std::string& y);

  /// Con A, generated as the join-closure of the principal congruences.
  /// Throws SizeLimitError beyond the given limits.
  CongruenceLattice congruence_lattice(const AlgebraPtr& a, const CongruenceLimits& limits = {});

  /// Partition of the source into fibres of h. Throws NotHomomorphismError.
  Congruence kernel(const Homomorphism& h);

  /// The identity homomorphism and the constant map onto a one-element
  /// algebra of the same signature.
  Homomorphism identity_homomorphism(const AlgebraPtr& a);
  Homomorphism terminal_homomorphism(const AlgebraPtr& a);

}  // namespace sheafcon
