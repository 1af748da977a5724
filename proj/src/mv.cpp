#include "sheafcon/mv.hpp"

#include <algorithm>
#include <numeric>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  const Signature& mv_signature() {
    static const Signature sig{{"oplus", 2}, {"neg", 1}, {"zero", 0}};
    return sig;
  }

  namespace {

    std::size_t mv_symbol(const Algebra& a, const std::string& name, std::size_t arity) {
      auto k = a.find_symbol(name);
      if (!k || a.arity(*k) != arity) {
        throw NotMVAlgebraError(a.name() + " has no " + std::to_string(arity) + "-ary symbol '"
                                + name + "'");
      }
      return *k;
    }

  }  // namespace

  MVAlgebra MVAlgebra::make(AlgebraPtr algebra) {
    const auto& a = *algebra;
    if (a.size() > ElemSet::capacity) {
      throw SizeLimitError("MV-algebras are limited to 64 elements");
    }
    MVAlgebra m;
    m.oplus_ = mv_symbol(a, "oplus", 2);
    m.neg_ = mv_symbol(a, "neg", 1);
    m.zero_ = mv_symbol(a, "zero", 0);
    m.algebra_ = std::move(algebra);
    const std::size_t n = a.size();
    auto nm = [&](std::size_t x) { return a.element_name(x); };
    auto fail = [&](const std::string& law, std::vector<std::size_t> at) {
      std::string w;
      for (std::size_t x : at) {
        w += (w.empty() ? "" : ",") + nm(x);
      }
      throw NotMVAlgebraError(a.name() + " violates " + law + " at (" + w + ")");
    };
    const std::size_t zero = m.zero();
    const std::size_t one = m.one();
    for (std::size_t x = 0; x < n; ++x) {
      if (m.oplus(x, zero) != x) {
        fail("x + 0 = x", {x});
      }
      if (m.neg(m.neg(x)) != x) {
        fail("neg neg x = x", {x});
      }
      if (m.oplus(x, one) != one) {
        fail("x + neg 0 = neg 0", {x});
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (m.oplus(x, y) != m.oplus(y, x)) {
          fail("commutativity", {x, y});
        }
        if (m.oplus(m.neg(m.oplus(m.neg(x), y)), y) != m.oplus(m.neg(m.oplus(m.neg(y), x)), x)) {
          fail("neg(neg x + y) + y = neg(neg y + x) + x", {x, y});
        }
        for (std::size_t z = 0; z < n; ++z) {
          if (m.oplus(m.oplus(x, y), z) != m.oplus(x, m.oplus(y, z))) {
            fail("associativity", {x, y, z});
          }
        }
      }
    }
    m.ominus_.resize(n * n);
    m.join_.resize(n * n);
    m.meet_.resize(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        m.ominus_[x * n + y] = m.neg(m.oplus(m.neg(x), y));
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        m.join_[x * n + y] = m.oplus(m.ominus(x, y), y);
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        m.meet_[x * n + y] = m.neg(m.join(m.neg(x), m.neg(y)));
      }
    }
    return m;
  }

  DistLattice MVAlgebra::lattice_reduct() const {
    auto alg = Algebra::make(name() + "-lat", algebra_->carrier(), lattice_signature(),
                             {meet_, join_, {zero()}, {one()}});
    return DistLattice::make(std::move(alg));
  }

  MVAlgebra luk_chain(std::size_t n) {
    if (n == 0) {
      throw InvalidSizeError("Lukasiewicz chains need n >= 1");
    }
    if (n + 1 > ElemSet::capacity) {
      throw InvalidSizeError("Lukasiewicz chains are limited to 64 elements");
    }
    std::vector<std::string> carrier;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == 0 || k == n) {
        carrier.push_back(k == 0 ? "0" : "1");
        continue;
      }
      const std::size_t g = std::gcd(k, n);
      carrier.push_back(std::to_string(k / g) + "/" + std::to_string(n / g));
    }
    const std::size_t s = n + 1;
    std::vector<std::size_t> oplus(s * s), neg(s);
    for (std::size_t x = 0; x < s; ++x) {
      neg[x] = n - x;
      for (std::size_t y = 0; y < s; ++y) {
        oplus[x * s + y] = std::min(n, x + y);
      }
    }
    return MVAlgebra::make(Algebra::make("L" + std::to_string(n), std::move(carrier),
                                         mv_signature(), {std::move(oplus), std::move(neg), {0}}));
  }

  MVAlgebra mv_product(const std::vector<MVAlgebra>& factors) {
    std::vector<AlgebraPtr> algs;
    std::string name;
    for (const auto& f : factors) {
      algs.push_back(f.algebra());
      name += (name.empty() ? "" : "x") + f.name();
    }
    auto p = product(algs, mv_signature());
    if (factors.empty()) {
      return MVAlgebra::make(p.algebra);
    }
    auto spec = p.algebra->to_spec();
    spec.name = name;
    return MVAlgebra::make(Algebra::make(spec));
  }

  bool is_mv_ideal(const MVAlgebra& a, ElemSet s) {
    if (!s.contains(a.zero())) {
      return false;
    }
    for (std::size_t x : s.members()) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        if (a.leq(y, x) && !s.contains(y)) {
          return false;
        }
      }
      for (std::size_t y : s.members()) {
        if (!s.contains(a.oplus(x, y))) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_prime_mv_ideal(const MVAlgebra& a, ElemSet s) {
    if (!is_mv_ideal(a, s) || s.contains(a.one())) {
      return false;
    }
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        if (s.contains(a.meet(x, y)) && !s.contains(x) && !s.contains(y)) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<ElemSet> mv_ideals(const MVAlgebra& a) {
    std::vector<ElemSet> out;
    for (std::size_t e = 0; e < a.size(); ++e) {
      if (a.oplus(e, e) != e) {
        continue;
      }
      ElemSet down;
      for (std::size_t x = 0; x < a.size(); ++x) {
        if (a.leq(x, e)) {
          down.insert(x);
        }
      }
      if (!is_mv_ideal(a, down)) {
        throw InternalInvariantError("down-set of an idempotent is not an ideal in " + a.name());
      }
      out.push_back(down);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Congruence ideal_congruence(const MVAlgebra& a, ElemSet ideal) {
    const std::size_t n = a.size();
    std::vector<std::size_t> labels(n);
    for (std::size_t x = 0; x < n; ++x) {
      labels[x] = x;
      for (std::size_t y = 0; y < x; ++y) {
        if (ideal.contains(a.oplus(a.ominus(x, y), a.ominus(y, x)))) {
          labels[x] = labels[y];
          break;
        }
      }
    }
    return Congruence::from_labels(a.algebra(), labels);
  }

  MVSpectrum mv_spectrum(const MVAlgebra& a) {
    MVSpectrum s;
    for (ElemSet i : mv_ideals(a)) {
      if (is_prime_mv_ideal(a, i)) {
        s.primes.push_back(i);
      }
    }
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    const std::size_t k = s.primes.size();
    for (std::size_t i = 0; i < k; ++i) {
      names.push_back("P" + std::to_string(i));
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j && s.primes[i].subset_of(s.primes[j])) {
          rel.emplace_back(i, j);
        }
      }
    }
    s.y = FinitePoset::from_indices(names, rel);
    for (std::size_t i = 0; i < k; ++i) {
      const auto up = s.y.up(i).members();
      for (std::size_t u : up) {
        for (std::size_t v : up) {
          if (!s.y.comparable(u, v)) {
            s.is_root_system = false;
          }
        }
      }
    }
    const ElemSet maxima = s.y.maximal(s.y.all());
    for (std::size_t i = 0; i < k; ++i) {
      const auto above = (s.y.up(i) & maxima).members();
      if (above.size() != 1) {
        throw InternalInvariantError("prime ideal " + names[i] + " of " + a.name() + " lies below "
                                     + std::to_string(above.size()) + " maximal ideals");
      }
    }
    s.z_of = maxima.members();
    std::vector<std::string> znames;
    for (std::size_t p : s.z_of) {
      znames.push_back(names[p]);
    }
    s.z = FinitePoset::from_indices(znames, {});
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t top = (s.y.up(i) & maxima).members().front();
      s.m.push_back(static_cast<std::size_t>(
          std::find(s.z_of.begin(), s.z_of.end(), top) - s.z_of.begin()));
    }
    return s;
  }

  MonotoneMap max_map(const MVSpectrum& s) { return MonotoneMap(s.y, s.z, s.m); }

  LambdaReport lambda_check(const MVAlgebra& a) {
    LambdaReport r;
    const auto& alg = a.algebra();
    const auto con = congruence_lattice(alg);
    r.con_size = con.size();
    std::vector<Congruence> lambda;
    for (std::size_t x = 0; x < a.size(); ++x) {
      lambda.push_back(principal_congruence(alg, a.zero(), x));
    }
    auto nm = [&](std::size_t x) { return alg->element_name(x); };
    if (!lambda[a.zero()].is_diagonal()) {
      r.holds = false;
      r.failure = "lambda(0) is not the diagonal";
      return r;
    }
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        if (!(lambda[a.meet(x, y)] == lambda[x].meet(lambda[y]))) {
          r.holds = false;
          r.failure = "lambda does not preserve meet at (" + nm(x) + "," + nm(y) + ")";
          return r;
        }
        if (!(lambda[a.join(x, y)] == lambda[x].join(lambda[y]))) {
          r.holds = false;
          r.failure = "lambda does not preserve join at (" + nm(x) + "," + nm(y) + ")";
          return r;
        }
      }
    }
    std::vector<Congruence> image = lambda;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    r.image_size = image.size();
    if (image.size() != con.size()) {
      r.holds = false;
      r.failure = "lambda reaches " + std::to_string(image.size()) + " of "
                  + std::to_string(con.size()) + " congruences";
    }
    return r;
  }

  KMap k_map(const MVAlgebra& a) {
    KMap k{priestley_dual(a.lattice_reduct()), mv_spectrum(a), {}};
    k.q = Decomposition{k.dual.x, k.spectrum.y, {}};
    for (std::size_t x = 0; x < k.dual.x.size(); ++x) {
      const ElemSet p = k.dual.prime_ideals[x];
      ElemSet kp;
      for (std::size_t e = 0; e < a.size(); ++e) {
        bool ok = true;
        for (std::size_t c : p.members()) {
          if (!p.contains(a.oplus(e, c))) {
            ok = false;
            break;
          }
        }
        if (ok) {
          kp.insert(e);
        }
      }
      auto it = std::find(k.spectrum.primes.begin(), k.spectrum.primes.end(), kp);
      if (it == k.spectrum.primes.end()) {
        throw InternalInvariantError("k(" + k.dual.x.name(x) + ") is not a prime MV-ideal of "
                                     + a.name());
      }
      k.q.map.push_back(static_cast<std::size_t>(it - k.spectrum.primes.begin()));
    }
    if (auto r = is_interpolating_decomposition(k.q); !r) {
      throw InternalInvariantError("k is not interpolating at (" + k.q.x.name(r.witness->first)
                                   + "," + k.q.x.name(r.witness->second) + ")");
    }
    return k;
  }

  MVSheaf mv_sheaf(const MVAlgebra& a) {
    auto k = k_map(a);
    const auto lattice_hom = psi_of_q(k.dual, k.q);
    std::vector<Congruence> stalks;
    for (std::size_t y = 0; y < k.spectrum.y.size(); ++y) {
      auto theta = lattice_hom.assignment.stalk(y).rebind(a.algebra());
      if (!(theta == ideal_congruence(a, k.spectrum.primes[y]))) {
        throw InternalInvariantError("stalk congruence at " + k.spectrum.y.name(y)
                                     + " differs from the ideal congruence");
      }
      stalks.push_back(std::move(theta));
    }
    auto v = validate_frame_hom(StalkAssignment(k.spectrum.y, a.algebra(), std::move(stalks)));
    if (!v.ok()) {
      throw InternalInvariantError("psi_k on " + a.name() + " is not a frame homomorphism: "
                                   + v.failure->message);
    }
    SheafRep sheaf = build_sheaf(*v.hom);
    auto certify = [&](const SheafRep& f, const std::string& which) {
      if (auto s = is_soft(f); !s) {
        throw InternalInvariantError(which + " sheaf of " + a.name() + " is not soft");
      }
      if (auto e = eta_check(f); !e.isomorphism()) {
        throw InternalInvariantError("global sections of the " + which + " sheaf of " + a.name()
                                     + " are not isomorphic to A: " + e.failure);
      }
    };
    certify(sheaf, "spectral");
    SheafRep direct = direct_image(sheaf, max_map(k.spectrum));
    certify(direct, "maximal");
    return MVSheaf{std::move(k), *v.hom, std::move(sheaf), std::move(direct)};
  }

}  // namespace sheafcon
