#include "sheafcon/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>

#include "sheafcon/dlat.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/mv.hpp"
#include "sheafcon/oracle.hpp"
#include "sheafcon/perm.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon {

  namespace {

    struct Outcome {
      bool passed = true;
      std::string detail;
    };

    Outcome failed(std::string why) { return Outcome{false, std::move(why)}; }

    std::vector<AlgebraPtr> small_algebras(const SuiteOptions& o) {
      auto out = bounded_lattices_up_to(4);
      for (const auto& m : mv_corpus()) {
        if (m.size() <= 4) {
          out.push_back(m.algebra());
        }
      }
      for (auto& r : random_algebras(o.random_count, o.seed)) {
        out.push_back(std::move(r));
      }
      return out;
    }

    std::string where(const FinitePoset& y, const StalkAssignment& sa) {
      std::string s = sa.algebra()->name() + " over " + format_set(y, y.all()) + " [";
      for (std::size_t i = 0; i < y.size(); ++i) {
        s += (i ? " " : "") + y.name(i) + ":" + sa.stalk(i).to_string();
      }
      return s + "]";
    }

    // ---- 1 -----------------------------------------------------------------

    Outcome congruence_oracle(const SuiteOptions& o) {
      std::vector<AlgebraPtr> algs = bounded_lattices_up_to(5);
      for (const auto& m : mv_corpus()) {
        algs.push_back(m.algebra());
      }
      for (auto& r : random_algebras(o.random_count, o.seed)) {
        algs.push_back(std::move(r));
      }
      std::size_t total = 0;
      for (const auto& a : algs) {
        const auto con = congruence_lattice(a);
        std::vector<oracle::Labels> mine;
        for (const auto& c : con.members()) {
          mine.push_back(c.labels());
        }
        std::sort(mine.begin(), mine.end());
        const auto expected = oracle::congruences(*a);
        if (mine != expected) {
          return failed(a->name() + ": congruence_lattice has " + std::to_string(mine.size())
                        + " members, partition filter has " + std::to_string(expected.size()));
        }
        total += mine.size();
      }
      return {true, std::to_string(algs.size()) + " algebras, " + std::to_string(total)
                        + " congruences"};
    }

    // ---- 2 -----------------------------------------------------------------

    Outcome interpolation_equivalence() {
      std::size_t pairs = 0;
      std::size_t lattices = 0;
      for (const auto& p : posets_up_to(3)) {
        const auto d = priestley_dual(down_set_lattice(p));
        ++lattices;
        const std::size_t subsets = std::size_t{1} << d.x.size();
        std::vector<Congruence> theta;
        for (std::size_t c = 0; c < subsets; ++c) {
          theta.push_back(cong_from_closed(d, ElemSet(c)));
        }
        for (std::size_t c1 = 0; c1 < subsets; ++c1) {
          for (std::size_t c2 = 0; c2 < subsets; ++c2) {
            ++pairs;
            const bool commutes = commute(theta[c1], theta[c2]).commutes;
            const bool interp = interpolation_condition(d.x, ElemSet(c1), ElemSet(c2)).holds;
            if (commutes != interp) {
              return failed(d.lattice.algebra()->name() + " with C1 = " + format_set(d.x, ElemSet(c1))
                            + ", C2 = " + format_set(d.x, ElemSet(c2)) + ": commute = "
                            + (commutes ? "true" : "false"));
            }
          }
        }
      }
      return {true, std::to_string(lattices) + " lattices, " + std::to_string(pairs)
                        + " subset pairs, 0 discrepancies"};
    }

    // ---- 3 and 4 -----------------------------------------------------------

    struct Sweep {
      std::size_t assignments = 0;
      std::size_t validated = 0;
      std::size_t rejected = 0;
      std::size_t flagged = 0;
      std::optional<std::string> main_failure;
      std::optional<std::string> converse_failure;
    };

    Sweep assignment_sweep(const SuiteOptions& o) {
      Sweep s;
      const auto bases = posets_up_to(3);
      for (const auto& a : small_algebras(o)) {
        const auto con = congruence_lattice(a);
        for (const auto& y : bases) {
          for (const auto& sa : monotone_assignments(y, con)) {
            ++s.assignments;
            auto v = validate_frame_hom(sa);
            if (v.ok()) {
              ++s.validated;
              if (s.main_failure) {
                continue;
              }
              if (auto r = roundtrip_main(*v.hom); !r) {
                s.main_failure = where(y, sa) + ": " + r.failure;
              } else if (auto g = global_sections_check(*v.hom); !g) {
                s.main_failure = where(y, sa) + ": " + g.failure;
              }
              continue;
            }
            ++s.rejected;
            const auto f = build_sheaf(sa);
            if (eta_check(f).isomorphism() && is_soft(f)) {
              ++s.flagged;
              if (!s.converse_failure) {
                s.converse_failure = where(y, sa) + " fails validation ("
                                     + v.failure->message + ") yet is soft with eta an isomorphism";
              }
            }
          }
        }
      }
      return s;
    }

    Outcome main_roundtrip(const Sweep& s) {
      if (s.main_failure) {
        return failed(*s.main_failure);
      }
      return {true, std::to_string(s.validated) + " validated frame homomorphisms of "
                        + std::to_string(s.assignments) + " monotone assignments, 0 failures"};
    }

    Outcome converse(const Sweep& s) {
      if (s.converse_failure) {
        return failed(std::to_string(s.flagged) + " candidates; first: " + *s.converse_failure);
      }
      return {true, std::to_string(s.rejected) + " rejected assignments, 0 soft with eta an isomorphism"};
    }

    // ---- 5 -----------------------------------------------------------------

    std::vector<std::vector<std::size_t>> all_maps(std::size_t from, std::size_t to) {
      std::vector<std::vector<std::size_t>> out;
      std::vector<std::size_t> m(from, 0);
      auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == from) {
          out.push_back(m);
          return;
        }
        for (std::size_t v = 0; v < to; ++v) {
          m[i] = v;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      return out;
    }

    Outcome dl_roundtrip() {
      std::size_t decomps = 0;
      std::size_t homs = 0;
      const auto posets = posets_up_to(3);
      for (const auto& p : posets) {
        const auto d = priestley_dual(down_set_lattice(p));
        const auto con = congruence_lattice(d.lattice.algebra());
        for (const auto& y : posets) {
          std::size_t here_q = 0;
          std::size_t here_h = 0;
          for (auto& m : all_maps(d.x.size(), y.size())) {
            Decomposition q{d.x, y, std::move(m)};
            if (!is_interpolating_decomposition(q)) {
              continue;
            }
            ++here_q;
            const auto f = build_sheaf(psi_of_q(d, q));
            if (q_of_sheaf(d, f).map != q.map) {
              return failed("q -> F -> q_F changes q on " + d.lattice.algebra()->name() + " over "
                            + format_set(y, y.all()));
            }
          }
          for (const auto& sa : monotone_assignments(y, con)) {
            auto v = validate_frame_hom(sa);
            if (!v.ok()) {
              continue;
            }
            ++here_h;
            const auto f = build_sheaf(*v.hom);
            const auto q = q_of_sheaf(d, f);
            if (!(psi_assignment(d, q) == sa)) {
              return failed("F -> q_F -> F changes " + where(y, sa));
            }
          }
          if (here_q != here_h) {
            return failed(std::to_string(here_q) + " interpolating decompositions but "
                          + std::to_string(here_h) + " frame homomorphisms for "
                          + d.lattice.algebra()->name() + " over " + format_set(y, y.all()));
          }
          decomps += here_q;
          homs += here_h;
        }
      }
      return {true, std::to_string(decomps) + " interpolating decompositions, "
                        + std::to_string(homs) + " frame homomorphisms, 0 failures"};
    }

    // ---- 6 -----------------------------------------------------------------

    Outcome direct_images(const SuiteOptions& o) {
      const auto algs = small_algebras(o);
      const auto posets = posets_up_to(3);
      std::size_t sheaves = 0;
      std::size_t maps = 0;
      for (const auto& a : algs) {
        const auto con = congruence_lattice(a);
        for (const auto& y : posets) {
          for (const auto& sa : monotone_assignments(y, con)) {
            if (!validate_frame_hom(sa).ok()) {
              continue;
            }
            const auto f = build_sheaf(sa);
            ++sheaves;
            for (const auto& z : posets) {
              for (const auto& map : enumerate_monotone_maps(y, z)) {
                ++maps;
                std::vector<Congruence> stalks;
                for (std::size_t p = 0; p < z.size(); ++p) {
                  stalks.push_back(sa.theta(map.preimage(z.up(p))));
                }
                const SheafRep g(StalkAssignment(z, a, std::move(stalks)));
                if (auto bad = direct_image_mismatches(f, map, g); !bad.empty()) {
                  return failed(where(y, sa) + " pushed to " + format_set(z, z.all())
                                + ": mismatch over " + format_set(z, bad.front()));
                }
                try {
                  direct_image(f, map);
                } catch (const Error& e) {
                  return failed(where(y, sa) + ": " + e.what());
                }
              }
            }
          }
        }
      }
      return {true, std::to_string(sheaves) + " soft sheaves, " + std::to_string(maps)
                        + " monotone maps, 0 failures"};
    }

    // ---- 7 -----------------------------------------------------------------

    Outcome sp_finite() {
      std::vector<DistLattice> lattices;
      for (const auto& a : bounded_lattices_up_to(5)) {
        try {
          lattices.push_back(DistLattice::make(a));
        } catch (const NotLatticeError&) {
        }
      }
      for (const auto& p : posets_up_to(4)) {
        lattices.push_back(down_set_lattice(p));
      }
      for (const auto& m : mv_corpus()) {
        lattices.push_back(m.lattice_reduct());
      }
      for (const auto& l : lattices) {
        const auto d = priestley_dual(l);
        if (auto r = sp_check(d); !r) {
          return failed(l.algebra()->name() + ": " + r.failure);
        }
      }
      return {true, std::to_string(lattices.size()) + " distributive lattices, |Con A| = 2^|X| in each"};
    }

    // ---- 8 -----------------------------------------------------------------

    Outcome mv_suite() {
      const auto corpus = mv_corpus();
      for (const auto& a : corpus) {
        try {
          const auto con = congruence_lattice(a.algebra());
          for (std::size_t i = 0; i < con.size(); ++i) {
            for (std::size_t j = i + 1; j < con.size(); ++j) {
              if (!commute(con[i], con[j])) {
                return failed(a.name() + ": " + con[i].to_string() + " and " + con[j].to_string()
                              + " do not commute");
              }
              for (std::size_t k = 0; k < con.size(); ++k) {
                if (con.meet(i, con.join(j, k)) != con.join(con.meet(i, j), con.meet(i, k))) {
                  return failed(a.name() + ": Con A is not distributive");
                }
              }
            }
          }
          if (auto l = lambda_check(a); !l) {
            return failed(a.name() + ": " + l.failure);
          }
          if (!mv_spectrum(a).is_root_system) {
            return failed(a.name() + ": spectrum is not a root system");
          }
          const auto sheaf = mv_sheaf(a);
          if (eta_check(sheaf.direct).global_sections != a.size()) {
            return failed(a.name() + ": direct image has the wrong number of global sections");
          }
        } catch (const Error& e) {
          return failed(a.name() + ": " + e.what());
        }
      }
      return {true, std::to_string(corpus.size()) + " MV-algebras, 0 failures"};
    }

    // ---- 9 -----------------------------------------------------------------

    Outcome crt() {
      std::vector<AlgebraPtr> algs = bounded_lattices_up_to(5);
      for (const auto& m : mv_corpus()) {
        if (m.size() <= 8) {
          algs.push_back(m.algebra());
        }
      }
      std::size_t solved = 0;
      std::size_t rejected = 0;
      for (const auto& a : algs) {
        const auto con = congruence_lattice(a);
        const std::size_t c = con.size();
        std::vector<std::vector<std::size_t>> families;
        for (std::size_t i = 0; i < c; ++i) {
          for (std::size_t j = i + 1; j < c; ++j) {
            families.push_back({i, j});
            for (std::size_t k = j + 1; k < c; ++k) {
              families.push_back({i, j, k});
            }
          }
        }
        for (const auto& fam : families) {
          std::vector<Congruence> thetas;
          for (std::size_t i : fam) {
            thetas.push_back(con[i]);
          }
          const auto gen = generated_sublattice(thetas);
          if (!gen.is_distributive || !gen.pairwise_commuting) {
            continue;
          }
          const std::size_t n = a->size();
          const std::size_t tuples = int_pow(n, fam.size());
          for (std::size_t code = 0; code < tuples; ++code) {
            const auto targets = decode_tuple(code, fam.size(), n);
            std::vector<CrtConstraint> cs;
            for (std::size_t i = 0; i < fam.size(); ++i) {
              cs.push_back({thetas[i], targets[i]});
            }
            bool valid = true;
            for (std::size_t i = 0; i < fam.size() && valid; ++i) {
              for (std::size_t j = 0; j < fam.size() && valid; ++j) {
                const auto pairs = oracle::compose(thetas[i].labels(), thetas[j].labels());
                valid = std::binary_search(pairs.begin(), pairs.end(),
                                           std::pair{targets[i], targets[j]});
              }
            }
            const auto expected = oracle::crt_solutions(*a, cs);
            if (!valid) {
              try {
                crt_solve(a, cs);
                return failed(a->name() + ": crt_solve accepted targets outside the compositions");
              } catch (const PreconditionError&) {
                ++rejected;
              }
              continue;
            }
            if (expected.empty()) {
              return failed(a->name() + ": exhaustive search finds no solution for a valid instance");
            }
            const std::size_t x = crt_solve(a, cs);
            if (x != expected.front()) {
              return failed(a->name() + ": crt_solve returned " + a->element_name(x)
                            + ", exhaustive search " + a->element_name(expected.front()));
            }
            ++solved;
          }
        }
      }
      // The non-commuting 3-chain instance.
      const auto chain = bounded_lattices_up_to(3).back();
      const auto lo = principal_congruence(chain, 0, 1);
      const auto hi = principal_congruence(chain, 1, 2);
      try {
        crt_solve(chain, {{lo, 0}, {hi, 2}});
        return failed("the non-commuting 3-chain instance was accepted");
      } catch (const PreconditionError&) {
      }
      return {true, std::to_string(solved) + " instances solved, " + std::to_string(rejected)
                        + " invalid targets rejected, 3-chain instance rejected"};
    }

    // ---- 10 ----------------------------------------------------------------

    Outcome hofmann_mislove() {
      const auto posets = posets_up_to(5);
      for (const auto& p : posets) {
        if (auto r = hofmann_mislove_check(p); !r.holds) {
          return failed(format_set(p, p.all()) + ": " + r.counterexample);
        }
      }
      return {true, std::to_string(posets.size()) + " posets"};
    }

    const char* title(int id) {
      switch (id) {
        case 1: return "congruence lattices match partition filtering";
        case 2: return "commuting iff interpolating";
        case 3: return "frame homomorphism round trip";
        case 4: return "converse: soft with eta iso implies valid";
        case 5: return "decomposition double round trip";
        case 6: return "direct image kernels";
        case 7: return "|Con A| = 2^|X|";
        case 8: return "MV-algebra suite";
        case 9: return "Chinese remainder solver";
        case 10: return "Hofmann-Mislove bijection";
        default: return "unknown";
      }
    }

  }  // namespace

  std::vector<CriterionResult> run_suite(const SuiteOptions& o) {
    std::vector<int> ids = o.only;
    if (ids.empty()) {
      for (int i = 1; i <= 10; ++i) {
        ids.push_back(i);
      }
    }
    // Criteria 3 and 4 share one sweep; its time is charged to whichever
    // runs first.
    std::optional<Sweep> sweep;
    auto get_sweep = [&]() -> const Sweep& {
      if (!sweep) {
        sweep = assignment_sweep(o);
      }
      return *sweep;
    };
    std::vector<CriterionResult> out;
    for (int id : ids) {
      CriterionResult r;
      r.id = id;
      r.title = title(id);
      const auto t0 = std::chrono::steady_clock::now();
      Outcome res;
      try {
        switch (id) {
          case 1: res = congruence_oracle(o); break;
          case 2: res = interpolation_equivalence(); break;
          case 3: res = main_roundtrip(get_sweep()); break;
          case 4: res = converse(get_sweep()); break;
          case 5: res = dl_roundtrip(); break;
          case 6: res = direct_images(o); break;
          case 7: res = sp_finite(); break;
          case 8: res = mv_suite(); break;
          case 9: res = crt(); break;
          case 10: res = hofmann_mislove(); break;
          default: res = failed("no such criterion");
        }
      } catch (const std::exception& e) {
        res = failed(std::string("unexpected error: ") + e.what());
      }
      r.passed = res.passed;
      r.detail = res.detail;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(r));
    }
    return out;
  }

  std::string format_result(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + "  " + r.title
           + ": " + r.detail + "  (" + secs + "s)";
  }

}  // namespace sheafcon
