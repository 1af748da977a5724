#include "sheafcon/oracle.hpp"

#include <algorithm>
#include <set>

namespace sheafcon::oracle {

  void for_each_partition(std::size_t n, const std::function<bool(const Labels&)>& visit) {
    Labels rgs(n, 0);
    bool stop = false;
    auto rec = [&](auto& self, std::size_t i, std::size_t blocks) -> void {
      if (stop) {
        return;
      }
      if (i == n) {
        stop = !visit(rgs);
        return;
      }
      for (std::size_t b = 0; b <= blocks && !stop; ++b) {
        rgs[i] = b;
        self(self, i + 1, std::max(blocks, b + 1));
      }
    };
    if (n == 0) {
      visit(rgs);
      return;
    }
    rgs[0] = 0;
    rec(rec, 1, 1);
  }

  bool compatible(const Algebra& a, const Labels& labels) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < a.operation_count(); ++k) {
      const std::size_t r = a.arity(k);
      const std::size_t count = int_pow(n, r);
      for (std::size_t u = 0; u < count; ++u) {
        const auto x = decode_tuple(u, r, n);
        for (std::size_t v = u + 1; v < count; ++v) {
          const auto y = decode_tuple(v, r, n);
          bool related = true;
          for (std::size_t i = 0; i < r && related; ++i) {
            related = labels[x[i]] == labels[y[i]];
          }
          if (related && labels[a.table(k)[u]] != labels[a.table(k)[v]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::vector<Labels> congruences(const Algebra& a) {
    // Pairs of argument tuples (with their results), bucketed by the largest
    // element they mention, so each pair is tested once all its elements
    // carry a label.
    struct Check {
      std::vector<std::size_t> x, y;
      std::size_t fx, fy;
    };
    const std::size_t n = a.size();
    std::vector<std::vector<Check>> by_level(n);
    for (std::size_t k = 0; k < a.operation_count(); ++k) {
      const std::size_t r = a.arity(k);
      const std::size_t count = int_pow(n, r);
      for (std::size_t u = 0; u < count; ++u) {
        const auto x = decode_tuple(u, r, n);
        for (std::size_t v = u + 1; v < count; ++v) {
          const auto y = decode_tuple(v, r, n);
          const std::size_t fx = a.table(k)[u];
          const std::size_t fy = a.table(k)[v];
          std::size_t level = std::max(fx, fy);
          for (std::size_t i = 0; i < r; ++i) {
            level = std::max({level, x[i], y[i]});
          }
          by_level[level].push_back(Check{x, y, fx, fy});
        }
      }
    }
    std::vector<Labels> out;
    Labels rgs(n, 0);
    auto ok_at = [&](std::size_t level) {
      for (const auto& c : by_level[level]) {
        bool related = true;
        for (std::size_t i = 0; i < c.x.size() && related; ++i) {
          related = rgs[c.x[i]] == rgs[c.y[i]];
        }
        if (related && rgs[c.fx] != rgs[c.fy]) {
          return false;
        }
      }
      return true;
    };
    auto rec = [&](auto& self, std::size_t i, std::size_t blocks) -> void {
      if (i == n) {
        out.push_back(rgs);
        return;
      }
      for (std::size_t b = 0; b <= blocks; ++b) {
        rgs[i] = b;
        if (ok_at(i)) {
          self(self, i + 1, std::max(blocks, b + 1));
        }
      }
    };
    if (n == 0) {
      out.push_back(rgs);
    } else {
      rec(rec, 0, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  namespace {

    bool refines(const Labels& x, const Labels& y) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (x[i] == x[j] && y[i] != y[j]) {
            return false;
          }
        }
      }
      return true;
    }

  }  // namespace

  Labels principal(const Algebra& a, std::size_t x, std::size_t y) {
    std::vector<Labels> containing;
    for (auto& l : congruences(a)) {
      if (l[x] == l[y]) {
        containing.push_back(std::move(l));
      }
    }
    for (const auto& c : containing) {
      bool least = true;
      for (const auto& d : containing) {
        least = least && refines(c, d);
      }
      if (least) {
        return c;
      }
    }
    return {};
  }

  std::vector<std::pair<std::size_t, std::size_t>> compose(const Labels& r, const Labels& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = r.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t b = 0; b < n; ++b) {
          if (r[a] == r[b] && s[b] == s[c]) {
            out.emplace_back(a, c);
            break;
          }
        }
      }
    }
    return out;
  }

  std::vector<ElemSet> closed_sets(const FinitePoset& p, Direction d) {
    std::vector<ElemSet> out;
    const std::size_t n = p.size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const ElemSet s(bits);
      bool closed = true;
      for (std::size_t x : s.members()) {
        for (std::size_t y = 0; y < n; ++y) {
          const bool beyond = d == Direction::up ? p.leq(x, y) : p.leq(y, x);
          if (beyond && !s.contains(y)) {
            closed = false;
          }
        }
      }
      if (closed) {
        out.push_back(s);
      }
    }
    return out;
  }

  std::vector<ElemSet> filters(const std::vector<ElemSet>& lattice) {
    const std::size_t m = lattice.size();
    auto index = [&](ElemSet s) -> std::size_t {
      return static_cast<std::size_t>(std::find(lattice.begin(), lattice.end(), s)
                                      - lattice.begin());
    };
    std::vector<ElemSet> out;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << m); ++bits) {
      const ElemSet fam(bits);
      bool ok = true;
      for (std::size_t i : fam.members()) {
        for (std::size_t j = 0; j < m && ok; ++j) {
          if (lattice[i].subset_of(lattice[j]) && !fam.contains(j)) {
            ok = false;
          }
        }
        for (std::size_t j : fam.members()) {
          if (!fam.contains(index(lattice[i] & lattice[j]))) {
            ok = false;
          }
        }
      }
      if (ok) {
        out.push_back(fam);
      }
    }
    return out;
  }

  std::vector<ElemSet> lattice_prime_ideals(const Algebra& l) {
    const std::size_t n = l.size();
    const std::size_t meet = l.symbol("meet");
    const std::size_t join = l.symbol("join");
    auto leq = [&](std::size_t x, std::size_t y) { return l.apply(meet, x, y) == x; };
    std::vector<ElemSet> out;
    for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << n); ++bits) {
      const ElemSet s(bits);
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) {
        for (std::size_t y = 0; y < n && ok; ++y) {
          if (s.contains(x) && leq(y, x) && !s.contains(y)) {
            ok = false;
          }
          if (s.contains(x) && s.contains(y) && !s.contains(l.apply(join, x, y))) {
            ok = false;
          }
          if (!s.contains(x) && !s.contains(y) && s.contains(l.apply(meet, x, y))) {
            ok = false;
          }
        }
      }
      if (ok) {
        out.push_back(s);
      }
    }
    return out;
  }

  std::vector<ElemSet> mv_ideals(const MVAlgebra& a) {
    const std::size_t n = a.size();
    std::vector<ElemSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const ElemSet s(bits);
      if (!s.contains(a.zero())) {
        continue;
      }
      bool ok = true;
      for (std::size_t x : s.members()) {
        for (std::size_t y = 0; y < n && ok; ++y) {
          // y <= x in an MV-algebra iff neg(y) (+) x = 1.
          if (a.oplus(a.neg(y), x) == a.one() && !s.contains(y)) {
            ok = false;
          }
          if (s.contains(y) && !s.contains(a.oplus(x, y))) {
            ok = false;
          }
        }
      }
      if (ok) {
        out.push_back(s);
      }
    }
    return out;
  }

  std::vector<Section> sections(const SheafRep& f, ElemSet s) {
    const auto& y = f.base();
    const auto pts = s.members();
    std::vector<Section> out;
    Section cur{s, std::vector<std::size_t>(y.size(), 0)};
    auto continuous = [&]() {
      for (std::size_t p : pts) {
        const ElemSet cone = y.up(p) & s;
        bool found = false;
        for (std::size_t a = 0; a < f.algebra()->size() && !found; ++a) {
          bool agrees = true;
          for (std::size_t z : cone.members()) {
            agrees = agrees && f.germ(a, z) == cur.values[z];
          }
          found = agrees;
        }
        if (!found) {
          return false;
        }
      }
      return true;
    };
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (i == pts.size()) {
        if (continuous()) {
          out.push_back(cur);
        }
        return;
      }
      for (std::size_t v = 0; v < f.assignment().stalk(pts[i]).block_count(); ++v) {
        cur.values[pts[i]] = v;
        self(self, i + 1);
      }
      cur.values[pts[i]] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::size_t> crt_solutions(const Algebra& a, const std::vector<CrtConstraint>& cs) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < a.size(); ++x) {
      bool ok = true;
      for (const auto& c : cs) {
        ok = ok && c.theta.related(x, c.target);
      }
      if (ok) {
        out.push_back(x);
      }
    }
    return out;
  }

  bool distributive(const std::vector<Congruence>& m) {
    for (const auto& x : m) {
      for (const auto& y : m) {
        for (const auto& z : m) {
          if (!(x.meet(y.join(z)) == x.meet(y).join(x.meet(z)))) {
            return false;
          }
        }
      }
    }
    return true;
  }

}  // namespace sheafcon::oracle
