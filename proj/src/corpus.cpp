#include "sheafcon/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "sheafcon/dlat.hpp"
#include "sheafcon/errors.hpp"

namespace sheafcon {

  namespace {

    using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

    // Strict order given as an n*n matrix; the canonical key is the least
    // matrix over all relabellings.
    std::vector<unsigned char> canonical_key(const std::vector<unsigned char>& lt, std::size_t n) {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<unsigned char> best;
      std::vector<unsigned char> cur(n * n);
      do {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            cur[perm[i] * n + perm[j]] = lt[i * n + j];
          }
        }
        if (best.empty() || cur < best) {
          best = cur;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return best;
    }

  }  // namespace

  std::vector<FinitePoset> posets_of_size(std::size_t n) {
    if (n > 6) {
      throw InvalidSizeError("poset enumeration is limited to 6 elements");
    }
    Pairs candidates;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        candidates.emplace_back(i, j);
      }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("y" + std::to_string(i));
    }
    std::set<std::vector<unsigned char>> seen;
    std::vector<FinitePoset> out;
    const std::size_t subsets = std::size_t{1} << candidates.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<unsigned char> lt(n * n, 0);
      for (std::size_t b = 0; b < candidates.size(); ++b) {
        if ((mask >> b) & 1U) {
          lt[candidates[b].first * n + candidates[b].second] = 1;
        }
      }
      bool transitive = true;
      for (std::size_t i = 0; i < n && transitive; ++i) {
        for (std::size_t j = 0; j < n && transitive; ++j) {
          for (std::size_t k = 0; k < n && transitive; ++k) {
            if (lt[i * n + j] && lt[j * n + k] && !lt[i * n + k]) {
              transitive = false;
            }
          }
        }
      }
      if (!transitive || !seen.insert(canonical_key(lt, n)).second) {
        continue;
      }
      Pairs rel;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (lt[i * n + j]) {
            rel.emplace_back(i, j);
          }
        }
      }
      out.push_back(FinitePoset::from_indices(names, rel));
    }
    return out;
  }

  std::vector<FinitePoset> posets_up_to(std::size_t n) {
    std::vector<FinitePoset> out;
    for (std::size_t k = 1; k <= n; ++k) {
      auto more = posets_of_size(k);
      out.insert(out.end(), more.begin(), more.end());
    }
    return out;
  }

  std::vector<AlgebraPtr> bounded_lattices_up_to(std::size_t n) {
    std::vector<AlgebraPtr> out;
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t idx = 0;
      for (const auto& p : posets_of_size(k)) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < k; ++i) {
          names.push_back("e" + std::to_string(i));
        }
        const auto renamed = FinitePoset::from_indices(names, p.cover_pairs());
        try {
          out.push_back(lattice_from_order(renamed, "lat" + std::to_string(k) + "_"
                                                        + std::to_string(idx)));
          ++idx;
        } catch (const NotLatticeError&) {
        }
      }
    }
    return out;
  }

  std::vector<MVAlgebra> mv_corpus() {
    std::vector<MVAlgebra> out;
    for (std::size_t n = 1; n <= 11; ++n) {
      out.push_back(luk_chain(n));
    }
    // Chain sizes of the factors; Lk has k+1 elements.
    const std::vector<std::vector<std::size_t>> shapes{
        {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {2, 2, 2}, {2, 2, 3}};
    for (const auto& shape : shapes) {
      std::vector<MVAlgebra> factors;
      for (std::size_t s : shape) {
        factors.push_back(luk_chain(s - 1));
      }
      out.push_back(mv_product(factors));
    }
    return out;
  }

  std::vector<AlgebraPtr> random_algebras(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::vector<AlgebraPtr> out;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t n = draw(1, 4);
      const std::size_t ops = draw(0, 4);
      std::vector<std::string> carrier;
      for (std::size_t x = 0; x < n; ++x) {
        carrier.push_back(std::to_string(x));
      }
      Signature sig;
      std::vector<std::vector<std::size_t>> tables;
      for (std::size_t k = 0; k < ops; ++k) {
        const std::size_t arity = draw(0, 2);
        sig.push_back({"f" + std::to_string(k), arity});
        std::vector<std::size_t> table(int_pow(n, arity));
        for (auto& v : table) {
          v = draw(0, n - 1);
        }
        tables.push_back(std::move(table));
      }
      out.push_back(Algebra::make("rand" + std::to_string(i), std::move(carrier), std::move(sig),
                                  std::move(tables)));
    }
    return out;
  }

  std::vector<StalkAssignment> monotone_assignments(const FinitePoset& base,
                                                    const CongruenceLattice& con) {
    std::vector<StalkAssignment> out;
    std::vector<std::size_t> pick(base.size(), 0);
    auto rec = [&](auto& self, std::size_t y) -> void {
      if (y == base.size()) {
        std::vector<Congruence> stalks;
        for (std::size_t i : pick) {
          stalks.push_back(con[i]);
        }
        out.emplace_back(base, con.algebra(), std::move(stalks));
        return;
      }
      for (std::size_t c = 0; c < con.size(); ++c) {
        bool ok = true;
        for (std::size_t w = 0; w < y && ok; ++w) {
          if (base.leq(w, y) && !con.leq(pick[w], c)) {
            ok = false;
          }
          if (base.leq(y, w) && !con.leq(c, pick[w])) {
            ok = false;
          }
        }
        if (ok) {
          pick[y] = c;
          self(self, y + 1);
        }
      }
    };
    rec(rec, 0);
    return out;
  }

}  // namespace sheafcon
