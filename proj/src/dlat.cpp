#include "sheafcon/dlat.hpp"

#include <algorithm>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  const Signature& lattice_signature() {
    static const Signature sig{{"meet", 2}, {"join", 2}, {"bot", 0}, {"top", 0}};
    return sig;
  }

  namespace {

    std::size_t lattice_symbol(const Algebra& a, const std::string& name, std::size_t arity) {
      auto k = a.find_symbol(name);
      if (!k || a.arity(*k) != arity) {
        throw NotLatticeError(a.name() + " has no " + std::to_string(arity) + "-ary symbol '"
                              + name + "'");
      }
      return *k;
    }

  }  // namespace

  DistLattice DistLattice::make(AlgebraPtr algebra) {
    const auto& a = *algebra;
    if (a.size() > ElemSet::capacity) {
      throw SizeLimitError("distributive lattices are limited to 64 elements");
    }
    if (a.size() == 0) {
      throw NotLatticeError("a bounded lattice needs at least one element");
    }
    DistLattice l;
    l.meet_ = lattice_symbol(a, "meet", 2);
    l.join_ = lattice_symbol(a, "join", 2);
    l.bot_ = lattice_symbol(a, "bot", 0);
    l.top_ = lattice_symbol(a, "top", 0);
    l.algebra_ = std::move(algebra);
    const std::size_t n = a.size();
    auto nm = [&](std::size_t x) { return a.element_name(x); };
    auto fail = [&](const std::string& law, std::size_t x, std::size_t y, std::size_t z) {
      throw NotLatticeError(a.name() + " violates " + law + " at (" + nm(x) + "," + nm(y) + ","
                            + nm(z) + ")");
    };
    for (std::size_t x = 0; x < n; ++x) {
      if (l.meet(x, x) != x || l.join(x, x) != x) {
        fail("idempotence", x, x, x);
      }
      if (l.meet(x, l.bot()) != l.bot() || l.join(x, l.top()) != l.top()) {
        fail("boundedness", x, l.bot(), l.top());
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (l.meet(x, y) != l.meet(y, x) || l.join(x, y) != l.join(y, x)) {
          fail("commutativity", x, y, y);
        }
        if (l.meet(x, l.join(x, y)) != x || l.join(x, l.meet(x, y)) != x) {
          fail("absorption", x, y, y);
        }
        for (std::size_t z = 0; z < n; ++z) {
          if (l.meet(x, l.meet(y, z)) != l.meet(l.meet(x, y), z)
              || l.join(x, l.join(y, z)) != l.join(l.join(x, y), z)) {
            fail("associativity", x, y, z);
          }
          if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) {
            fail("distributivity", x, y, z);
          }
        }
      }
    }
    return l;
  }

  std::vector<std::size_t> DistLattice::join_irreducibles() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j) {
      if (j == bot()) {
        continue;
      }
      // j is join-irreducible iff the join of everything strictly below it is
      // strictly below it.
      std::size_t below = bot();
      for (std::size_t a = 0; a < size(); ++a) {
        if (a != j && leq(a, j)) {
          below = join(below, a);
        }
      }
      if (below != j) {
        out.push_back(j);
      }
    }
    return out;
  }

  FinitePoset DistLattice::order() const {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) {
        if (a != b && leq(a, b)) {
          rel.emplace_back(a, b);
        }
      }
    }
    return FinitePoset::from_indices(algebra_->carrier(), rel);
  }

  AlgebraPtr lattice_from_order(const FinitePoset& p, const std::string& name) {
    const std::size_t n = p.size();
    if (n == 0) {
      throw NotLatticeError("the empty poset is not a bounded lattice");
    }
    auto extremum = [&](ElemSet s, bool least) -> std::optional<std::size_t> {
      for (std::size_t c : s.members()) {
        bool ok = true;
        for (std::size_t d : s.members()) {
          if (least ? !p.leq(c, d) : !p.leq(d, c)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          return c;
        }
      }
      return std::nullopt;
    };
    std::vector<std::size_t> meet(n * n), join(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        auto m = extremum(p.down(x) & p.down(y), false);
        auto j = extremum(p.up(x) & p.up(y), true);
        if (!m || !j) {
          throw NotLatticeError("'" + p.name(x) + "' and '" + p.name(y) + "' have no "
                                + (m ? "join" : "meet"));
        }
        meet[x * n + y] = *m;
        join[x * n + y] = *j;
      }
    }
    auto bot = extremum(p.all(), true);
    auto top = extremum(p.all(), false);
    if (!bot || !top) {
      throw NotLatticeError("poset is not bounded");
    }
    return Algebra::make(name, p.names(), lattice_signature(),
                         {std::move(meet), std::move(join), {*bot}, {*top}});
  }

  DistLattice down_set_lattice(const FinitePoset& p, const std::string& name) {
    const auto downs = enumerate_sets(p, Direction::down);
    if (downs.size() > ElemSet::capacity) {
      throw SizeLimitError("down-set lattice exceeds 64 elements");
    }
    const std::size_t n = downs.size();
    auto index = [&](ElemSet s) {
      return static_cast<std::size_t>(std::lower_bound(downs.begin(), downs.end(), s)
                                      - downs.begin());
    };
    std::vector<std::string> carrier;
    std::vector<std::size_t> meet(n * n), join(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      carrier.push_back(format_set(p, downs[i]));
      for (std::size_t j = 0; j < n; ++j) {
        meet[i * n + j] = index(downs[i] & downs[j]);
        join[i * n + j] = index(downs[i] | downs[j]);
      }
    }
    auto alg = Algebra::make(name.empty() ? "D(P)" : name, std::move(carrier),
                             lattice_signature(),
                             {std::move(meet), std::move(join), {index(ElemSet{})},
                              {index(p.all())}});
    return DistLattice::make(std::move(alg));
  }

  PriestleyDual priestley_dual(const DistLattice& l) {
    PriestleyDual d{l, {}, l.join_irreducibles(), {}, {}};
    const std::size_t n = l.size();
    const std::size_t k = d.join_irreducibles.size();
    for (std::size_t j : d.join_irreducibles) {
      ElemSet ideal;
      for (std::size_t a = 0; a < n; ++a) {
        if (!l.leq(j, a)) {
          ideal.insert(a);
        }
      }
      d.prime_ideals.push_back(ideal);
    }
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < k; ++i) {
      names.push_back("p" + std::to_string(i));
      for (std::size_t t = 0; t < k; ++t) {
        if (i != t && d.prime_ideals[i].subset_of(d.prime_ideals[t])) {
          rel.emplace_back(i, t);
        }
      }
    }
    d.x = FinitePoset::from_indices(std::move(names), rel);
    for (std::size_t a = 0; a < n; ++a) {
      ElemSet h;
      for (std::size_t i = 0; i < k; ++i) {
        if (!d.prime_ideals[i].contains(a)) {
          h.insert(i);
        }
      }
      d.hat.push_back(h);
    }

    // a |-> a-hat must be a bounded lattice isomorphism onto the down-sets.
    const auto& alg = *l.algebra();
    auto broken = [&](const std::string& what) {
      throw InternalInvariantError("Priestley dual of " + alg.name() + ": " + what);
    };
    if (!d.hat[l.bot()].empty() || d.hat[l.top()] != d.x.all()) {
      broken("bounds are not preserved");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!d.x.is_closed(d.hat[a], Direction::down)) {
        broken("hat of " + alg.element_name(a) + " is not a down-set");
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (d.hat[l.meet(a, b)] != (d.hat[a] & d.hat[b])
            || d.hat[l.join(a, b)] != (d.hat[a] | d.hat[b])) {
          broken("lattice operations are not preserved at (" + alg.element_name(a) + ","
                 + alg.element_name(b) + ")");
        }
      }
    }
    auto sorted = d.hat;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != enumerate_sets(d.x, Direction::down)) {
      broken("a |-> a-hat is not a bijection onto the down-sets");
    }
    return d;
  }

  Congruence cong_from_closed(const PriestleyDual& d, ElemSet c) {
    const std::size_t n = d.lattice.size();
    std::vector<std::size_t> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
      labels[a] = static_cast<std::size_t>((d.hat[a] & c).bits());
    }
    return Congruence::from_labels(d.lattice.algebra(), labels);
  }

  ElemSet closed_from_cong(const PriestleyDual& d, const Congruence& theta) {
    if (theta.size() != d.lattice.size()) {
      throw AlgebraMismatchError("congruence carrier does not match the lattice");
    }
    ElemSet c = d.x.all();
    const std::size_t n = theta.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (theta.related(a, b)) {
          // Points separating a from b are excluded.
          c = c.minus(ElemSet(d.hat[a].bits() ^ d.hat[b].bits()));
        }
      }
    }
    return c;
  }

  SpReport sp_check(const PriestleyDual& d) {
    SpReport r;
    const auto con = congruence_lattice(d.lattice.algebra());
    r.points = d.x.size();
    r.congruences = con.size();
    if (r.points >= 63 || con.size() != (std::size_t{1} << r.points)) {
      r.holds = false;
      r.failure = "|Con A| = " + std::to_string(con.size()) + " but |X| = "
                  + std::to_string(r.points);
      return r;
    }
    const std::size_t subsets = std::size_t{1} << r.points;
    std::vector<Congruence> image;
    for (std::size_t bits = 0; bits < subsets; ++bits) {
      const ElemSet c(bits);
      auto theta = cong_from_closed(d, c);
      if (closed_from_cong(d, theta) != c) {
        r.holds = false;
        r.failure = "C_theta_C differs from C for C = " + format_set(d.x, c);
        return r;
      }
      image.push_back(std::move(theta));
    }
    for (std::size_t s = 0; s < subsets; ++s) {
      for (std::size_t t = 0; t < subsets; ++t) {
        const bool sub = ElemSet(s).subset_of(ElemSet(t));
        if (sub != image[t].leq(image[s])) {
          r.holds = false;
          r.failure = "C |-> theta_C does not reverse inclusion at " + format_set(d.x, ElemSet(s))
                      + ", " + format_set(d.x, ElemSet(t));
          return r;
        }
      }
    }
    return r;
  }

  InterpolationResult interpolation_condition(const FinitePoset& x, ElemSet c1, ElemSet c2) {
    const ElemSet both = c1 & c2;
    for (std::size_t x1 : c1.members()) {
      for (std::size_t x2 : c2.members()) {
        if (!x.comparable(x1, x2)) {
          continue;
        }
        const std::size_t lo = x.leq(x1, x2) ? x1 : x2;
        const std::size_t hi = lo == x1 ? x2 : x1;
        if ((both & x.up(lo) & x.down(hi)).empty()) {
          return InterpolationResult{false, std::pair{x1, x2}};
        }
      }
    }
    return {};
  }

  void validate_decomposition(const Decomposition& q) {
    if (q.map.size() != q.x.size()) {
      throw RangeError("decomposition must assign a point of Y to every point of X");
    }
    for (std::size_t v : q.map) {
      if (v >= q.y.size()) {
        throw RangeError("decomposition maps outside Y");
      }
    }
  }

  InterpolationResult is_interpolating_decomposition(const Decomposition& q) {
    validate_decomposition(q);
    const auto& x = q.x;
    for (std::size_t x1 = 0; x1 < x.size(); ++x1) {
      for (std::size_t x2 = 0; x2 < x.size(); ++x2) {
        if (!x.leq(x1, x2)) {
          continue;
        }
        bool found = false;
        for (std::size_t z : (x.up(x1) & x.down(x2)).members()) {
          if (q.y.leq(q.map[x1], q.map[z]) && q.y.leq(q.map[x2], q.map[z])) {
            found = true;
            break;
          }
        }
        if (!found) {
          return InterpolationResult{false, std::pair{x1, x2}};
        }
      }
    }
    return {};
  }

  namespace {

    ElemSet preimage(const Decomposition& q, ElemSet s) {
      ElemSet out;
      for (std::size_t x = 0; x < q.x.size(); ++x) {
        if (s.contains(q.map[x])) {
          out.insert(x);
        }
      }
      return out;
    }

  }  // namespace

  StalkAssignment psi_assignment(const PriestleyDual& d, const Decomposition& q) {
    validate_decomposition(q);
    if (!(q.x == d.x)) {
      throw PreconditionError("decomposition is not defined on the dual of "
                              + d.lattice.algebra()->name());
    }
    std::vector<Congruence> stalks;
    for (std::size_t y = 0; y < q.y.size(); ++y) {
      stalks.push_back(cong_from_closed(d, preimage(q, q.y.up(y))));
    }
    return StalkAssignment(q.y, d.lattice.algebra(), std::move(stalks));
  }

  FrameHom psi_of_q(const PriestleyDual& d, const Decomposition& q) {
    if (auto r = is_interpolating_decomposition(q); !r) {
      throw NotInterpolatingError("q is not interpolating at x1 = " + q.x.name(r.witness->first)
                                  + ", x2 = " + q.x.name(r.witness->second));
    }
    auto v = validate_frame_hom(psi_assignment(d, q));
    if (!v.ok()) {
      throw InternalInvariantError("psi_q of an interpolating q is not a frame homomorphism: "
                                   + v.failure->message);
    }
    return *v.hom;
  }

  Decomposition q_of_sheaf(const PriestleyDual& d, const SheafRep& f) {
    if (f.algebra()->size() != d.lattice.size()) {
      throw PreconditionError("sheaf is not over the lattice " + d.lattice.algebra()->name());
    }
    if (auto v = validate_frame_hom(f.assignment()); !v.ok()) {
      throw PreconditionError("sheaf assignment is not a frame homomorphism: " + v.failure->message);
    }
    if (!is_soft(f)) {
      throw SoftnessRequiredError("q_F needs a soft sheaf");
    }
    const auto& y = f.base();
    const auto downs = enumerate_sets(y, Direction::down);
    std::vector<ElemSet> opens;  // X \ C(psi_F(U)) for each down-set U
    for (ElemSet u : downs) {
      const auto theta = theta_of_sheaf_at(f, u.complement(y.size()));
      opens.push_back(closed_from_cong(d, theta).complement(d.x.size()));
    }
    Decomposition q{d.x, y, std::vector<std::size_t>(d.x.size(), 0)};
    for (std::size_t x = 0; x < d.x.size(); ++x) {
      ElemSet meet = y.all();
      for (std::size_t i = 0; i < downs.size(); ++i) {
        if (opens[i].contains(x)) {
          meet = meet & downs[i];
        }
      }
      const auto tops = y.maximal(meet).members();
      if (tops.size() != 1 || y.down(tops.front()) != meet) {
        throw InternalInvariantError("no point y with down(y) = " + format_set(y, meet)
                                     + " for x = " + d.x.name(x));
      }
      q.map[x] = tops.front();
    }
    return q;
  }

  Decomposition compose(const Decomposition& q, const MonotoneMap& f) {
    if (!(f.source() == q.y)) {
      throw PreconditionError("map does not start at the decomposition's Y");
    }
    Decomposition out{q.x, f.target(), {}};
    for (std::size_t v : q.map) {
      out.map.push_back(f(v));
    }
    return out;
  }

}  // namespace sheafcon
