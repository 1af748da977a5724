#include "sheafcon/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <bit>
#include <cstdint>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  std::size_t int_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      r *= base;
    }
    return r;
  }

  std::size_t encode_tuple(std::span<const std::size_t> args, std::size_t n) {
    std::size_t code = 0;
    for (std::size_t a : args) {
      code = code * n + a;
    }
    return code;
  }

  std::vector<std::size_t> decode_tuple(std::size_t code, std::size_t arity, std::size_t n) {
    std::vector<std::size_t> out(arity);
    for (std::size_t i = arity; i-- > 0;) {
      out[i] = code % n;
      code /= n;
    }
    return out;
  }

  namespace {

    constexpr std::size_t table_size_limit = std::size_t{1} << 24;

    void check_signature(const Signature& sig) {
      for (std::size_t i = 0; i < sig.size(); ++i) {
        for (std::size_t j = i + 1; j < sig.size(); ++j) {
          if (sig[i].name == sig[j].name) {
            throw SignatureMismatchError("duplicate operation symbol '" + sig[i].name + "'");
          }
        }
      }
    }

    std::string tuple_string(const Algebra& a, std::span<const std::size_t> args) {
      std::string s = "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        s += (i ? "," : "") + a.element_name(args[i]);
      }
      return s + ")";
    }

    std::vector<std::size_t> canonical_labels(std::span<const std::size_t> labels) {
      std::vector<std::size_t> out(labels.size());
      std::vector<std::pair<std::size_t, std::size_t>> seen;  // raw -> canonical
      for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::find_if(seen.begin(), seen.end(),
                               [&](const auto& p) { return p.first == labels[i]; });
        if (it == seen.end()) {
          seen.emplace_back(labels[i], seen.size());
          out[i] = seen.size() - 1;
        } else {
          out[i] = it->second;
        }
      }
      return out;
    }

    struct UnionFind {
      explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x = parent[x];
        }
        return x;
      }
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        parent[b] = a;
        return true;
      }
      std::vector<std::size_t> labels() {
        std::vector<std::size_t> out(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) {
          out[i] = find(i);
        }
        return out;
      }
      std::vector<std::size_t> parent;
    };

  }  // namespace

  AlgebraPtr Algebra::make(std::string name, std::vector<std::string> carrier,
                           Signature signature, std::vector<std::vector<std::size_t>> tables) {
    check_signature(signature);
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      for (std::size_t j = i + 1; j < carrier.size(); ++j) {
        if (carrier[i] == carrier[j]) {
          throw DuplicateElementError("duplicate carrier element '" + carrier[i] + "'");
        }
      }
    }
    if (tables.size() != signature.size()) {
      throw PartialTableError("expected one table per operation symbol");
    }
    const std::size_t n = carrier.size();
    for (std::size_t k = 0; k < signature.size(); ++k) {
      const std::size_t expected = int_pow(n, signature[k].arity);
      if (expected > table_size_limit) {
        throw SizeLimitError("operation table for '" + signature[k].name + "' too large");
      }
      if (tables[k].size() != expected) {
        throw PartialTableError("table for '" + signature[k].name + "' has "
                                + std::to_string(tables[k].size()) + " entries, expected "
                                + std::to_string(expected));
      }
      for (std::size_t v : tables[k]) {
        if (v >= n) {
          throw RangeError("table for '" + signature[k].name + "' maps outside the carrier");
        }
      }
    }
    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->name_ = std::move(name);
    alg->carrier_ = std::move(carrier);
    alg->signature_ = std::move(signature);
    alg->tables_ = std::move(tables);
    return alg;
  }

  AlgebraPtr Algebra::make(const AlgebraSpec& spec) {
    check_signature(spec.signature);
    const std::size_t n = spec.carrier.size();
    auto lookup = [&](const std::string& s) -> std::size_t {
      auto it = std::find(spec.carrier.begin(), spec.carrier.end(), s);
      if (it == spec.carrier.end()) {
        throw RangeError("'" + s + "' is not in the carrier");
      }
      return static_cast<std::size_t>(it - spec.carrier.begin());
    };
    for (const auto& [sym, _] : spec.tables) {
      if (std::none_of(spec.signature.begin(), spec.signature.end(),
                       [&](const OperationSymbol& o) { return o.name == sym; })) {
        throw SignatureMismatchError("table given for unknown symbol '" + sym + "'");
      }
    }
    std::vector<std::vector<std::size_t>> tables;
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    for (const auto& op : spec.signature) {
      auto it = spec.tables.find(op.name);
      if (it == spec.tables.end()) {
        throw PartialTableError("no table for symbol '" + op.name + "'");
      }
      const std::size_t count = int_pow(n, op.arity);
      if (count > table_size_limit) {
        throw SizeLimitError("operation table for '" + op.name + "' too large");
      }
      std::vector<std::size_t> table(count, unset);
      for (const auto& [args, result] : it->second) {
        if (args.size() != op.arity) {
          throw ArityMismatchError("entry for '" + op.name + "' has "
                                   + std::to_string(args.size()) + " arguments, arity is "
                                   + std::to_string(op.arity));
        }
        std::vector<std::size_t> idx;
        for (const auto& a : args) {
          idx.push_back(lookup(a));
        }
        table[encode_tuple(idx, n)] = lookup(result);
      }
      for (std::size_t c = 0; c < count; ++c) {
        if (table[c] == unset) {
          std::string tuple = "(";
          auto args = decode_tuple(c, op.arity, n);
          for (std::size_t i = 0; i < args.size(); ++i) {
            tuple += (i ? "," : "") + spec.carrier[args[i]];
          }
          throw PartialTableError("table for '" + op.name + "' is undefined at " + tuple + ")");
        }
      }
      tables.push_back(std::move(table));
    }
    return make(spec.name, spec.carrier, spec.signature, std::move(tables));
  }

  std::optional<std::size_t> Algebra::find(const std::string& element) const {
    auto it = std::find(carrier_.begin(), carrier_.end(), element);
    if (it == carrier_.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - carrier_.begin());
  }

  std::size_t Algebra::index(const std::string& element) const {
    if (auto i = find(element)) {
      return *i;
    }
    throw UnknownElementError("'" + element + "' is not an element of " + name_);
  }

  std::optional<std::size_t> Algebra::find_symbol(const std::string& symbol) const {
    for (std::size_t k = 0; k < signature_.size(); ++k) {
      if (signature_[k].name == symbol) {
        return k;
      }
    }
    return std::nullopt;
  }

  std::size_t Algebra::symbol(const std::string& symbol) const {
    if (auto k = find_symbol(symbol)) {
      return *k;
    }
    throw SignatureMismatchError("algebra " + name_ + " has no operation '" + symbol + "'");
  }

  std::size_t Algebra::apply(std::size_t op, std::span<const std::size_t> args) const {
    assert(args.size() == arity(op));
    return tables_[op][encode_tuple(args, size())];
  }

  AlgebraSpec Algebra::to_spec() const {
    AlgebraSpec spec{name_, carrier_, signature_, {}};
    for (std::size_t k = 0; k < signature_.size(); ++k) {
      auto& t = spec.tables[signature_[k].name];
      for (std::size_t c = 0; c < tables_[k].size(); ++c) {
        std::vector<std::string> args;
        for (std::size_t a : decode_tuple(c, signature_[k].arity, size())) {
          args.push_back(carrier_[a]);
        }
        t[args] = carrier_[tables_[k][c]];
      }
    }
    return spec;
  }

  // ---------------------------------------------------------------------------
  // Congruences

  bool is_compatible(const Algebra& a, std::span<const std::size_t> labels) {
    const std::size_t n = a.size();
    // Representative (least member) of each element's block.
    std::vector<std::size_t> rep(n);
    for (std::size_t x = 0; x < n; ++x) {
      rep[x] = x;
      for (std::size_t y = 0; y < x; ++y) {
        if (labels[y] == labels[x]) {
          rep[x] = y;
          break;
        }
      }
    }
    // A partition is compatible iff every basic translation maps each element
    // and its block representative into a common block.
    for (std::size_t k = 0; k < a.operation_count(); ++k) {
      const std::size_t r = a.arity(k);
      const auto& table = a.table(k);
      for (std::size_t code = 0; code < table.size(); ++code) {
        std::size_t weight = 1;
        for (std::size_t i = r; i-- > 0;) {
          const std::size_t digit = (code / weight) % n;
          if (rep[digit] != digit) {
            const std::size_t other = code - digit * weight + rep[digit] * weight;
            if (labels[table[code]] != labels[table[other]]) {
              return false;
            }
          }
          weight *= n;
        }
      }
    }
    return true;
  }

  Congruence::Congruence(AlgebraPtr algebra, std::vector<std::size_t> labels)
      : algebra_(std::move(algebra)), labels_(std::move(labels)) {
    block_count_ = labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end()) + 1;
  }

  Congruence make_congruence_unchecked(AlgebraPtr algebra, std::span<const std::size_t> labels) {
    auto canon = canonical_labels(labels);
    assert(is_compatible(*algebra, canon));
    return Congruence(std::move(algebra), std::move(canon));
  }

  Congruence Congruence::from_labels(AlgebraPtr algebra, std::span<const std::size_t> labels) {
    if (labels.size() != algebra->size()) {
      throw RangeError("partition does not cover the carrier of " + algebra->name());
    }
    auto canon = canonical_labels(labels);
    if (!is_compatible(*algebra, canon)) {
      Congruence bad(algebra, canon);
      throw NotCongruenceError("partition " + bad.to_string()
                               + " is not compatible with the operations of " + algebra->name());
    }
    return Congruence(std::move(algebra), std::move(canon));
  }

  Congruence Congruence::from_blocks(AlgebraPtr algebra,
                                     const std::vector<std::vector<std::size_t>>& blocks) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> labels(algebra->size(), unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) {
        throw RangeError("partition contains an empty block");
      }
      for (std::size_t x : blocks[b]) {
        if (x >= labels.size()) {
          throw RangeError("partition refers to an element outside the carrier");
        }
        if (labels[x] != unset) {
          throw RangeError("element '" + algebra->element_name(x) + "' occurs in two blocks");
        }
        labels[x] = b;
      }
    }
    for (std::size_t x = 0; x < labels.size(); ++x) {
      if (labels[x] == unset) {
        throw RangeError("element '" + algebra->element_name(x) + "' is in no block");
      }
    }
    return from_labels(std::move(algebra), labels);
  }

  Congruence Congruence::diagonal(AlgebraPtr algebra) {
    std::vector<std::size_t> labels(algebra->size());
    std::iota(labels.begin(), labels.end(), 0);
    return Congruence(std::move(algebra), std::move(labels));
  }

  Congruence Congruence::full(AlgebraPtr algebra) {
    std::vector<std::size_t> labels(algebra->size(), 0);
    return Congruence(std::move(algebra), std::move(labels));
  }

  std::vector<std::vector<std::size_t>> Congruence::blocks() const {
    std::vector<std::vector<std::size_t>> out(block_count_);
    for (std::size_t x = 0; x < labels_.size(); ++x) {
      out[labels_[x]].push_back(x);
    }
    return out;
  }

  std::vector<std::size_t> Congruence::representatives() const {
    std::vector<std::size_t> out(block_count_, 0);
    for (std::size_t x = labels_.size(); x-- > 0;) {
      out[labels_[x]] = x;
    }
    return out;
  }

  bool Congruence::leq(const Congruence& other) const {
    require_same_algebra(*this, other);
    // Canonical labels: a block of *this lies inside a block of other iff
    // the map label -> other label is well defined.
    std::vector<std::size_t> image(block_count_, static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < labels_.size(); ++x) {
      auto& slot = image[labels_[x]];
      if (slot == static_cast<std::size_t>(-1)) {
        slot = other.labels_[x];
      } else if (slot != other.labels_[x]) {
        return false;
      }
    }
    return true;
  }

  Congruence Congruence::meet(const Congruence& other) const {
    require_same_algebra(*this, other);
    std::vector<std::size_t> raw(labels_.size());
    const std::size_t width = other.block_count_ + 1;
    for (std::size_t x = 0; x < labels_.size(); ++x) {
      raw[x] = labels_[x] * width + other.labels_[x];
    }
    return Congruence(algebra_, canonical_labels(raw));
  }

  Congruence Congruence::join(const Congruence& other) const {
    require_same_algebra(*this, other);
    UnionFind uf(labels_.size());
    auto merge_blocks = [&](const std::vector<std::size_t>& labels) {
      std::vector<std::size_t> first(labels.size(), static_cast<std::size_t>(-1));
      for (std::size_t x = 0; x < labels.size(); ++x) {
        if (first[labels[x]] == static_cast<std::size_t>(-1)) {
          first[labels[x]] = x;
        } else {
          uf.unite(first[labels[x]], x);
        }
      }
    };
    merge_blocks(labels_);
    merge_blocks(other.labels_);
    auto raw = uf.labels();
    return make_congruence_unchecked(algebra_, raw);
  }

  Congruence Congruence::rebind(AlgebraPtr other) const {
    if (other->size() != algebra_->size()) {
      throw AlgebraMismatchError("cannot move a congruence of " + algebra_->name() + " to "
                                 + other->name() + ": carriers differ in size");
    }
    return from_labels(std::move(other), labels_);
  }

  std::string Congruence::to_string() const {
    std::ostringstream os;
    os << '{';
    auto bs = blocks();
    for (std::size_t b = 0; b < bs.size(); ++b) {
      os << (b ? "," : "") << '{';
      for (std::size_t i = 0; i < bs[b].size(); ++i) {
        os << (i ? "," : "") << algebra_->element_name(bs[b][i]);
      }
      os << '}';
    }
    os << '}';
    return os.str();
  }

  void require_same_algebra(const Congruence& x, const Congruence& y) {
    if (x.algebra() != y.algebra()) {
      throw AlgebraMismatchError("congruences live on different algebras ("
                                 + x.algebra()->name() + " vs " + y.algebra()->name() + ")");
    }
  }

  // ---------------------------------------------------------------------------
  // Congruence lattice

  CongruenceLattice::CongruenceLattice(std::vector<Congruence> members)
      : members_(std::move(members)) {
    if (members_.empty()) {
      throw InternalInvariantError("a congruence lattice cannot be empty");
    }
    std::sort(members_.begin(), members_.end(), [](const Congruence& a, const Congruence& b) {
      if (a.block_count() != b.block_count()) {
        return a.block_count() > b.block_count();
      }
      return a.labels() < b.labels();
    });
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    const std::size_t m = members_.size();
    leq_.assign(m * m, 0);
    meet_.assign(m * m, 0);
    join_.assign(m * m, 0);
    // Members are sorted by decreasing block count, so the join of i and j
    // is the first common upper bound and the meet the last common lower
    // bound in member order.
    const std::size_t words = (m + 63) / 64;
    std::vector<std::uint64_t> ups(m * words, 0), downs(m * words, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (members_[i].leq(members_[j])) {
          leq_[i * m + j] = 1;
          ups[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
          downs[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    auto first_common = [&](const std::uint64_t* x, const std::uint64_t* y) {
      for (std::size_t w = 0; w < words; ++w) {
        if (const std::uint64_t b = x[w] & y[w]) {
          return w * 64 + static_cast<std::size_t>(std::countr_zero(b));
        }
      }
      return none;
    };
    auto last_common = [&](const std::uint64_t* x, const std::uint64_t* y) {
      for (std::size_t w = words; w-- > 0;) {
        if (const std::uint64_t b = x[w] & y[w]) {
          return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(b));
        }
      }
      return none;
    };
    const bool verify = m <= 512;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        const std::size_t up = first_common(&ups[i * words], &ups[j * words]);
        const std::size_t down = last_common(&downs[i * words], &downs[j * words]);
        if (up == none || down == none
            || (verify && (!(members_[up] == members_[i].join(members_[j]))
                           || !(members_[down] == members_[i].meet(members_[j]))))) {
          throw InternalInvariantError("congruence family is not closed under meet and join");
        }
        join_[i * m + j] = join_[j * m + i] = up;
        meet_[i * m + j] = meet_[j * m + i] = down;
      }
    }
  }

  std::optional<std::size_t> CongruenceLattice::find(const Congruence& c) const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] == c) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t CongruenceLattice::index_of(const Congruence& c) const {
    if (auto i = find(c)) {
      return *i;
    }
    throw ForeignCongruenceError("congruence " + c.to_string() + " is not in this lattice");
  }

  std::vector<std::pair<std::size_t, std::size_t>> CongruenceLattice::cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (i == j || !leq(i, j)) {
          continue;
        }
        bool cover = true;
        for (std::size_t k = 0; k < size() && cover; ++k) {
          if (k != i && k != j && leq(i, k) && leq(k, j)) {
            cover = false;
          }
        }
        if (cover) {
          out.emplace_back(i, j);
        }
      }
    }
    return out;
  }

  // ---------------------------------------------------------------------------
  // Operations

  std::string homomorphism_violation(const Homomorphism& h) {
    const Algebra& s = *h.source;
    const Algebra& t = *h.target;
    if (s.signature() != t.signature()) {
      throw SignatureMismatchError("homomorphism between algebras of different signatures");
    }
    if (h.map.size() != s.size()) {
      throw RangeError("homomorphism map is not total on the source");
    }
    for (std::size_t v : h.map) {
      if (v >= t.size()) {
        throw RangeError("homomorphism map leaves the target carrier");
      }
    }
    std::vector<std::size_t> image;
    for (std::size_t k = 0; k < s.operation_count(); ++k) {
      const std::size_t r = s.arity(k);
      for (std::size_t code = 0; code < s.table(k).size(); ++code) {
        auto args = decode_tuple(code, r, s.size());
        image.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
          image[i] = h.map[args[i]];
        }
        if (h.map[s.table(k)[code]] != t.apply(k, image)) {
          return "h(" + s.signature()[k].name + tuple_string(s, args) + ") = "
                 + t.element_name(h.map[s.table(k)[code]]) + " but "
                 + s.signature()[k].name + tuple_string(t, image) + " = "
                 + t.element_name(t.apply(k, image));
        }
      }
    }
    return {};
  }

  ProductResult product(const std::vector<AlgebraPtr>& factors, const Signature& signature) {
    for (const auto& f : factors) {
      if (f->signature() != signature) {
        throw SignatureMismatchError("factor " + f->name() + " has a different signature");
      }
    }
    std::vector<std::size_t> sizes;
    std::size_t n = 1;
    std::string name = factors.empty() ? "1" : "";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      sizes.push_back(factors[i]->size());
      n *= factors[i]->size();
      name += (i ? "x" : "") + factors[i]->name();
    }
    if (n > (std::size_t{1} << 16)) {
      throw SizeLimitError("product carrier too large");
    }
    // Element code = row-major over the factor indices.
    auto components = [&](std::size_t code) {
      std::vector<std::size_t> c(factors.size());
      for (std::size_t i = factors.size(); i-- > 0;) {
        c[i] = code % sizes[i];
        code /= sizes[i];
      }
      return c;
    };
    auto compose = [&](const std::vector<std::size_t>& c) {
      std::size_t code = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        code = code * sizes[i] + c[i];
      }
      return code;
    };
    std::vector<std::string> carrier;
    for (std::size_t code = 0; code < n; ++code) {
      auto c = components(code);
      std::string s = "(";
      for (std::size_t i = 0; i < c.size(); ++i) {
        s += (i ? "," : "") + factors[i]->element_name(c[i]);
      }
      carrier.push_back(s + ")");
    }
    std::vector<std::vector<std::size_t>> tables;
    for (std::size_t k = 0; k < signature.size(); ++k) {
      const std::size_t r = signature[k].arity;
      const std::size_t count = int_pow(n, r);
      if (count > table_size_limit) {
        throw SizeLimitError("product operation table too large");
      }
      std::vector<std::size_t> table(count);
      for (std::size_t code = 0; code < count; ++code) {
        auto args = decode_tuple(code, r, n);
        std::vector<std::vector<std::size_t>> comps;
        for (std::size_t a : args) {
          comps.push_back(components(a));
        }
        std::vector<std::size_t> result(factors.size());
        std::vector<std::size_t> local(r);
        for (std::size_t i = 0; i < factors.size(); ++i) {
          for (std::size_t j = 0; j < r; ++j) {
            local[j] = comps[j][i];
          }
          result[i] = factors[i]->apply(k, local);
        }
        table[code] = compose(result);
      }
      tables.push_back(std::move(table));
    }
    ProductResult out;
    out.algebra = Algebra::make(name, std::move(carrier), signature, std::move(tables));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Homomorphism proj{out.algebra, factors[i], std::vector<std::size_t>(n)};
      for (std::size_t code = 0; code < n; ++code) {
        proj.map[code] = components(code)[i];
      }
      out.projections.push_back(std::move(proj));
    }
    return out;
  }

  ProductResult product(const std::vector<AlgebraPtr>& factors) {
    return product(factors, factors.empty() ? Signature{} : factors.front()->signature());
  }

  QuotientResult quotient(const AlgebraPtr& a, const Congruence& theta) {
    if (theta.algebra() != a) {
      throw ForeignCongruenceError("congruence does not belong to " + a->name());
    }
    const auto blocks = theta.blocks();
    const auto reps = theta.representatives();
    const std::size_t m = blocks.size();
    std::vector<std::string> carrier;
    for (const auto& b : blocks) {
      std::string s = "{";
      for (std::size_t i = 0; i < b.size(); ++i) {
        s += (i ? "," : "") + a->element_name(b[i]);
      }
      carrier.push_back(s + "}");
    }
    std::vector<std::vector<std::size_t>> tables;
    for (std::size_t k = 0; k < a->operation_count(); ++k) {
      const std::size_t r = a->arity(k);
      std::vector<std::size_t> table(int_pow(m, r));
      std::vector<std::size_t> args(r);
      for (std::size_t code = 0; code < table.size(); ++code) {
        auto bargs = decode_tuple(code, r, m);
        for (std::size_t i = 0; i < r; ++i) {
          args[i] = reps[bargs[i]];
        }
        table[code] = theta.block_of(a->apply(k, args));
      }
      tables.push_back(std::move(table));
    }
    QuotientResult out;
    out.algebra = Algebra::make(a->name() + "/~", std::move(carrier), a->signature(),
                                std::move(tables));
    out.projection = Homomorphism{a, out.algebra, theta.labels()};
    return out;
  }

  Congruence principal_congruence(const AlgebraPtr& a, std::size_t x, std::size_t y) {
    const std::size_t n = a->size();
    if (x >= n || y >= n) {
      throw UnknownElementError("principal congruence generator outside the carrier");
    }
    UnionFind uf(n);
    std::deque<std::pair<std::size_t, std::size_t>> work;
    if (uf.unite(x, y)) {
      work.emplace_back(x, y);
    }
    // Every newly identified pair is pushed once; applying all basic
    // translations to the pushed pairs closes the relation.
    while (!work.empty()) {
      auto [u, v] = work.front();
      work.pop_front();
      for (std::size_t k = 0; k < a->operation_count(); ++k) {
        const std::size_t r = a->arity(k);
        const auto& table = a->table(k);
        std::size_t weight = 1;
        for (std::size_t i = r; i-- > 0;) {
          for (std::size_t code = 0; code < table.size(); ++code) {
            if ((code / weight) % n != u) {
              continue;
            }
            const std::size_t other = code - u * weight + v * weight;
            const std::size_t s = table[code];
            const std::size_t t = table[other];
            if (uf.unite(s, t)) {
              work.emplace_back(s, t);
            }
          }
          weight *= n;
        }
      }
    }
    auto raw = uf.labels();
    return make_congruence_unchecked(a, raw);
  }

  Congruence principal_congruence(const AlgebraPtr& a, const std::string& x, const std::string& y) {
    return principal_congruence(a, a->index(x), a->index(y));
  }

  CongruenceLattice congruence_lattice(const AlgebraPtr& a, const CongruenceLimits& limits) {
    if (a->size() > limits.max_carrier) {
      throw SizeLimitError("congruence lattice of " + a->name() + " not computed: carrier size "
                           + std::to_string(a->size()) + " exceeds the bound "
                           + std::to_string(limits.max_carrier));
    }
    std::set<std::vector<std::size_t>> principal_labels;
    std::vector<Congruence> principals;
    for (std::size_t x = 0; x < a->size(); ++x) {
      for (std::size_t y = x + 1; y < a->size(); ++y) {
        auto p = principal_congruence(a, x, y);
        if (principal_labels.insert(p.labels()).second) {
          principals.push_back(std::move(p));
        }
      }
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<Congruence> members;
    std::deque<std::size_t> work;
    auto add = [&](Congruence c) {
      if (seen.insert(c.labels()).second) {
        if (seen.size() > limits.max_members) {
          throw SizeLimitError("congruence lattice of " + a->name() + " exceeds "
                               + std::to_string(limits.max_members) + " members");
        }
        members.push_back(std::move(c));
        work.push_back(members.size() - 1);
      }
    };
    add(Congruence::diagonal(a));
    while (!work.empty()) {
      const std::size_t i = work.front();
      work.pop_front();
      for (const auto& p : principals) {
        add(members[i].join(p));
      }
    }
    return CongruenceLattice(std::move(members));
  }

  Congruence kernel(const Homomorphism& h) {
    if (auto witness = homomorphism_violation(h); !witness.empty()) {
      throw NotHomomorphismError("map is not a homomorphism: " + witness);
    }
    return make_congruence_unchecked(h.source, h.map);
  }

  Homomorphism identity_homomorphism(const AlgebraPtr& a) {
    Homomorphism h{a, a, std::vector<std::size_t>(a->size())};
    std::iota(h.map.begin(), h.map.end(), 0);
    return h;
  }

  Homomorphism terminal_homomorphism(const AlgebraPtr& a) {
    auto one = product({}, a->signature()).algebra;
    return Homomorphism{a, one, std::vector<std::size_t>(a->size(), 0)};
  }

}  // namespace sheafcon
