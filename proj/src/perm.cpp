#include "sheafcon/perm.hpp"

#include <algorithm>
#include <set>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  BinaryRelation::BinaryRelation(AlgebraPtr algebra)
      : algebra_(std::move(algebra)), n_(algebra_->size()), bits_(n_ * n_, 0) {}

  BinaryRelation BinaryRelation::of(const Congruence& c) {
    BinaryRelation r(c.algebra());
    for (std::size_t a = 0; a < r.n_; ++a) {
      for (std::size_t b = 0; b < r.n_; ++b) {
        if (c.related(a, b)) {
          r.insert(a, b);
        }
      }
    }
    return r;
  }

  std::size_t BinaryRelation::pair_count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
  }

  std::vector<std::pair<std::size_t, std::size_t>> BinaryRelation::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (contains(a, b)) {
          out.emplace_back(a, b);
        }
      }
    }
    return out;
  }

  bool BinaryRelation::subset_of(const BinaryRelation& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && !other.bits_[i]) {
        return false;
      }
    }
    return true;
  }

  BinaryRelation compose(const BinaryRelation& first, const BinaryRelation& second) {
    if (first.algebra() != second.algebra()) {
      throw AlgebraMismatchError("cannot compose relations on different algebras");
    }
    BinaryRelation out(first.algebra());
    const std::size_t n = first.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!first.contains(a, b)) {
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (second.contains(b, c)) {
            out.insert(a, c);
          }
        }
      }
    }
    return out;
  }

  BinaryRelation compose(const Congruence& first, const Congruence& second) {
    require_same_algebra(first, second);
    // (a,c) is in the composite iff the first-block of a meets the
    // second-block of c.
    BinaryRelation out(first.algebra());
    const std::size_t n = first.size();
    std::vector<unsigned char> meets(first.block_count() * second.block_count(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      meets[first.block_of(b) * second.block_count() + second.block_of(b)] = 1;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        if (meets[first.block_of(a) * second.block_count() + second.block_of(c)]) {
          out.insert(a, c);
        }
      }
    }
    return out;
  }

  CommuteResult commute(const Congruence& x, const Congruence& y) {
    const auto xy = compose(x, y);
    const auto yx = compose(y, x);
    CommuteResult r;
    for (std::size_t a = 0; a < xy.size() && r.commutes; ++a) {
      for (std::size_t b = 0; b < xy.size(); ++b) {
        if (xy.contains(a, b) != yx.contains(a, b)) {
          r.commutes = false;
          r.witness = std::make_pair(a, b);
          break;
        }
      }
    }
    return r;
  }

  GeneratedSublattice generated_sublattice(const std::vector<Congruence>& congs) {
    if (congs.empty()) {
      throw PreconditionError("cannot generate a sublattice from no congruences");
    }
    for (const auto& c : congs) {
      require_same_algebra(congs.front(), c);
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<Congruence> members;
    for (const auto& c : congs) {
      if (seen.insert(c.labels()).second) {
        members.push_back(c);
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        for (auto c : {members[i].meet(members[j]), members[i].join(members[j])}) {
          if (seen.insert(c.labels()).second) {
            members.push_back(std::move(c));
          }
        }
      }
    }
    GeneratedSublattice out;
    out.members = CongruenceLattice(members).members();
    const auto& m = out.members;
    for (std::size_t i = 0; i < m.size() && out.is_distributive; ++i) {
      for (std::size_t j = 0; j < m.size() && out.is_distributive; ++j) {
        for (std::size_t k = 0; k < m.size(); ++k) {
          if (!(m[i].meet(m[j].join(m[k])) == m[i].meet(m[j]).join(m[i].meet(m[k])))) {
            out.is_distributive = false;
            out.distributivity_witness = std::array<std::size_t, 3>{i, j, k};
            break;
          }
        }
      }
    }
    for (std::size_t i = 0; i < m.size() && out.pairwise_commuting; ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        if (!commute(m[i], m[j])) {
          out.pairwise_commuting = false;
          out.commuting_witness = std::make_pair(i, j);
          break;
        }
      }
    }
    return out;
  }

  std::string crt_precondition_violation(const AlgebraPtr& a,
                                         const std::vector<CrtConstraint>& constraints) {
    if (constraints.empty()) {
      return {};
    }
    std::vector<Congruence> thetas;
    for (const auto& c : constraints) {
      if (c.theta.algebra() != a) {
        throw AlgebraMismatchError("constraint congruence does not belong to " + a->name());
      }
      if (c.target >= a->size()) {
        throw UnknownElementError("constraint target outside the carrier");
      }
      thetas.push_back(c.theta);
    }
    const auto sub = generated_sublattice(thetas);
    if (!sub.pairwise_commuting) {
      const auto [i, j] = *sub.commuting_witness;
      const auto w = *commute(sub.members[i], sub.members[j]).witness;
      return "generated sublattice is not pairwise commuting: " + sub.members[i].to_string()
             + " and " + sub.members[j].to_string() + " differ at (" + a->element_name(w.first)
             + "," + a->element_name(w.second) + ")";
    }
    if (!sub.is_distributive) {
      const auto t = *sub.distributivity_witness;
      return "generated sublattice is not distributive: triple " + sub.members[t[0]].to_string()
             + ", " + sub.members[t[1]].to_string() + ", " + sub.members[t[2]].to_string();
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      for (std::size_t j = 0; j < constraints.size(); ++j) {
        const auto rel = compose(constraints[i].theta, constraints[j].theta);
        if (!rel.contains(constraints[i].target, constraints[j].target)) {
          return "targets " + a->element_name(constraints[i].target) + " and "
                 + a->element_name(constraints[j].target) + " are not related by theta_"
                 + std::to_string(i + 1) + " o theta_" + std::to_string(j + 1);
        }
      }
    }
    return {};
  }

  std::size_t crt_solve(const AlgebraPtr& a, const std::vector<CrtConstraint>& constraints) {
    if (constraints.empty()) {
      throw PreconditionError("crt_solve needs at least one constraint");
    }
    if (auto why = crt_precondition_violation(a, constraints); !why.empty()) {
      throw PreconditionError(why);
    }
    for (std::size_t x = 0; x < a->size(); ++x) {
      if (std::all_of(constraints.begin(), constraints.end(), [&](const CrtConstraint& c) {
            return c.theta.related(x, c.target);
          })) {
        return x;
      }
    }
    throw InternalInvariantError("no simultaneous solution although the preconditions hold");
  }

}  // namespace sheafcon
