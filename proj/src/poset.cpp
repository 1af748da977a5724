#include "sheafcon/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  namespace {

    void check_capacity(std::size_t n) {
      if (n > ElemSet::capacity) {
        throw SizeLimitError("posets are limited to " + std::to_string(ElemSet::capacity)
                             + " elements, got " + std::to_string(n));
      }
    }

    // Indices ordered so that x < y implies x comes first.
    std::vector<std::size_t> linear_extension(const FinitePoset& p) {
      std::vector<std::size_t> order(p.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p.down(a).size() < p.down(b).size();
      });
      return order;
    }

  }  // namespace

  FinitePoset FinitePoset::from_indices(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::size_t, std::size_t>>& relation) {
    const std::size_t n = elements.size();
    check_capacity(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (elements[i] == elements[j]) {
          throw DuplicateElementError("duplicate poset element '" + elements[i] + "'");
        }
      }
    }
    FinitePoset p;
    p.names_ = std::move(elements);
    p.leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      p.leq_[i * n + i] = 1;
    }
    for (auto [x, y] : relation) {
      if (x >= n || y >= n) {
        throw UnknownElementError("relation refers to element index outside the poset");
      }
      p.leq_[x * n + y] = 1;
    }
    // Warshall
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!p.leq_[i * n + k]) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (p.leq_[k * n + j]) {
            p.leq_[i * n + j] = 1;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (p.leq_[i * n + j] && p.leq_[j * n + i]) {
          throw CycleError("order relation is not antisymmetric: '" + p.names_[i] + "' and '"
                           + p.names_[j] + "' lie on a cycle");
        }
      }
    }
    p.finish();
    return p;
  }

  FinitePoset FinitePoset::make(std::vector<std::string> elements,
                                const std::vector<std::pair<std::string, std::string>>& relation) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(relation.size());
    auto lookup = [&](const std::string& s) {
      auto it = std::find(elements.begin(), elements.end(), s);
      if (it == elements.end()) {
        throw UnknownElementError("unknown poset element '" + s + "'");
      }
      return static_cast<std::size_t>(it - elements.begin());
    };
    for (const auto& [x, y] : relation) {
      idx.emplace_back(lookup(x), lookup(y));
    }
    return from_indices(std::move(elements), idx);
  }

  FinitePoset FinitePoset::chain(std::size_t n, const std::string& prefix) {
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(prefix + std::to_string(i));
      if (i > 0) {
        rel.emplace_back(i - 1, i);
      }
    }
    return from_indices(std::move(names), rel);
  }

  FinitePoset FinitePoset::antichain(std::size_t n, const std::string& prefix) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(prefix + std::to_string(i));
    }
    return from_indices(std::move(names), {});
  }

  void FinitePoset::finish() {
    const std::size_t n = size();
    up_.assign(n, ElemSet{});
    down_.assign(n, ElemSet{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (leq(i, j)) {
          up_[i].insert(j);
          down_[j].insert(i);
        }
      }
    }
  }

  bool FinitePoset::covers(std::size_t x, std::size_t y) const {
    if (!less(x, y)) {
      return false;
    }
    return (up_[x] & down_[y]).size() == 2;
  }

  std::optional<std::size_t> FinitePoset::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t FinitePoset::index(const std::string& name) const {
    if (auto i = find(name)) {
      return *i;
    }
    throw UnknownElementError("unknown poset element '" + name + "'");
  }

  ElemSet FinitePoset::closure(ElemSet s, Direction d) const {
    ElemSet out;
    for (std::size_t x : s.members()) {
      out = out | (d == Direction::up ? up_[x] : down_[x]);
    }
    return out;
  }

  ElemSet FinitePoset::minimal(ElemSet s) const {
    ElemSet out;
    for (std::size_t x : s.members()) {
      if ((down_[x] & s) == ElemSet::single(x)) {
        out.insert(x);
      }
    }
    return out;
  }

  ElemSet FinitePoset::maximal(ElemSet s) const {
    ElemSet out;
    for (std::size_t x : s.members()) {
      if ((up_[x] & s) == ElemSet::single(x)) {
        out.insert(x);
      }
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (covers(i, j)) {
          out.emplace_back(i, j);
        }
      }
    }
    return out;
  }

  FinitePoset FinitePoset::dual() const {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (auto [x, y] : cover_pairs()) {
      rel.emplace_back(y, x);
    }
    return from_indices(names_, rel);
  }

  MonotoneMap::MonotoneMap(FinitePoset source, FinitePoset target,
                           std::vector<std::size_t> mapping)
      : source_(std::move(source)), target_(std::move(target)), mapping_(std::move(mapping)) {
    if (mapping_.size() != source_.size()) {
      throw RangeError("map must be total on its source poset");
    }
    for (std::size_t x = 0; x < mapping_.size(); ++x) {
      if (mapping_[x] >= target_.size()) {
        throw RangeError("map sends '" + source_.name(x) + "' outside the target poset");
      }
    }
    for (std::size_t x = 0; x < source_.size(); ++x) {
      for (std::size_t y = 0; y < source_.size(); ++y) {
        if (source_.leq(x, y) && !target_.leq(mapping_[x], mapping_[y])) {
          throw NotMonotoneError("map is not monotone: " + source_.name(x) + " <= "
                                 + source_.name(y) + " but " + target_.name(mapping_[x])
                                 + " is not <= " + target_.name(mapping_[y]));
        }
      }
    }
  }

  ElemSet MonotoneMap::preimage(ElemSet s) const {
    ElemSet out;
    for (std::size_t x = 0; x < mapping_.size(); ++x) {
      if (s.contains(mapping_[x])) {
        out.insert(x);
      }
    }
    return out;
  }

  ElemSet MonotoneMap::image(ElemSet s) const {
    ElemSet out;
    for (std::size_t x : s.members()) {
      out.insert(mapping_[x]);
    }
    return out;
  }

  MonotoneMap MonotoneMap::identity(const FinitePoset& p) {
    std::vector<std::size_t> m(p.size());
    std::iota(m.begin(), m.end(), 0);
    return MonotoneMap(p, p, std::move(m));
  }

  MonotoneMap MonotoneMap::to_point(const FinitePoset& p, const std::string& point) {
    return MonotoneMap(p, FinitePoset::from_indices({point}, {}),
                       std::vector<std::size_t>(p.size(), 0));
  }

  std::vector<ElemSet> enumerate_sets(const FinitePoset& p, Direction d) {
    // An up-set is decided from the top down: x may join only once every
    // element strictly above it has joined.
    auto order = linear_extension(p);
    if (d == Direction::up) {
      std::reverse(order.begin(), order.end());
    }
    std::vector<ElemSet> out;
    auto rec = [&](auto& self, std::size_t k, ElemSet cur) -> void {
      if (k == order.size()) {
        out.push_back(cur);
        return;
      }
      const std::size_t x = order[k];
      self(self, k + 1, cur);
      const ElemSet needed = (d == Direction::up ? p.up(x) : p.down(x)).minus(ElemSet::single(x));
      if (needed.subset_of(cur)) {
        ElemSet next = cur;
        next.insert(x);
        self(self, k + 1, next);
      }
    };
    rec(rec, 0, ElemSet{});
    std::sort(out.begin(), out.end());
    return out;
  }

  ElemSet closure(const FinitePoset& p, const std::vector<std::string>& s, Direction d) {
    ElemSet raw;
    for (const auto& name : s) {
      raw.insert(p.index(name));
    }
    return p.closure(raw, d);
  }

  std::vector<std::string> set_names(const FinitePoset& p, ElemSet s) {
    std::vector<std::string> out;
    for (std::size_t x : s.members()) {
      out.push_back(p.name(x));
    }
    return out;
  }

  std::string format_set(const FinitePoset& p, ElemSet s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::size_t x : s.members()) {
      os << (first ? "" : ",") << p.name(x);
      first = false;
    }
    os << '}';
    return os.str();
  }

  HofmannMisloveReport hofmann_mislove_check(const FinitePoset& p) {
    HofmannMisloveReport report;
    const auto ups = enumerate_sets(p, Direction::up);
    report.up_sets = ups.size();
    if (ups.size() > ElemSet::capacity) {
      throw SizeLimitError("up-set lattice too large for the Hofmann-Mislove check");
    }

    // The up-set lattice as a poset under inclusion; its up-closed families
    // that are nonempty and closed under intersection are the filters.
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> incl;
    for (std::size_t i = 0; i < ups.size(); ++i) {
      names.push_back(std::to_string(i));
      for (std::size_t j = 0; j < ups.size(); ++j) {
        if (i != j && ups[i].subset_of(ups[j])) {
          incl.emplace_back(i, j);
        }
      }
    }
    const auto lattice = FinitePoset::from_indices(names, incl);
    auto index_of = [&](ElemSet u) {
      return static_cast<std::size_t>(std::lower_bound(ups.begin(), ups.end(), u) - ups.begin());
    };
    std::vector<ElemSet> filters;
    for (ElemSet fam : enumerate_sets(lattice, Direction::up)) {
      if (fam.empty()) {
        continue;
      }
      bool meet_closed = true;
      for (std::size_t i : fam.members()) {
        for (std::size_t j : fam.members()) {
          if (!fam.contains(index_of(ups[i] & ups[j]))) {
            meet_closed = false;
          }
        }
      }
      if (meet_closed) {
        filters.push_back(fam);
      }
    }
    report.filters = filters.size();

    std::vector<ElemSet> phi;
    for (ElemSet k : ups) {
      ElemSet fam;
      for (std::size_t u = 0; u < ups.size(); ++u) {
        if (k.subset_of(ups[u])) {
          fam.insert(u);
        }
      }
      phi.push_back(fam);
    }

    for (std::size_t i = 0; i < ups.size(); ++i) {
      auto it = std::find(filters.begin(), filters.end(), phi[i]);
      if (it == filters.end()) {
        report.counterexample = "F_K is not a filter for K = " + format_set(p, ups[i]);
        return report;
      }
      report.bijection.emplace_back(i, static_cast<std::size_t>(it - filters.begin()));
      for (std::size_t j = 0; j < ups.size(); ++j) {
        const bool sub = ups[i].subset_of(ups[j]);
        const bool rev = phi[j].subset_of(phi[i]);
        if (sub != rev) {
          report.counterexample = "order embedding fails for K = " + format_set(p, ups[i])
                                  + ", K' = " + format_set(p, ups[j]);
          return report;
        }
      }
    }
    for (std::size_t f = 0; f < filters.size(); ++f) {
      if (std::find(phi.begin(), phi.end(), filters[f]) == phi.end()) {
        report.counterexample = "filter #" + std::to_string(f) + " is not of the form F_K";
        return report;
      }
    }
    report.holds = true;
    return report;
  }

  std::vector<MonotoneMap> enumerate_monotone_maps(const FinitePoset& p, const FinitePoset& q) {
    std::vector<MonotoneMap> out;
    std::vector<std::size_t> m(p.size(), 0);
    auto rec = [&](auto& self, std::size_t x) -> void {
      if (x == p.size()) {
        out.emplace_back(p, q, m);
        return;
      }
      for (std::size_t y = 0; y < q.size(); ++y) {
        bool ok = true;
        for (std::size_t w = 0; w < x && ok; ++w) {
          if (p.leq(w, x) && !q.leq(m[w], y)) {
            ok = false;
          }
          if (p.leq(x, w) && !q.leq(y, m[w])) {
            ok = false;
          }
        }
        if (ok) {
          m[x] = y;
          self(self, x + 1);
        }
      }
    };
    rec(rec, 0);
    return out;
  }

}  // namespace sheafcon
