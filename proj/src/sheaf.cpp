#include "sheafcon/sheaf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sheafcon/errors.hpp"
#include "sheafcon/perm.hpp"

namespace sheafcon {

  // ---------------------------------------------------------------------------
  // Stalk assignments

  StalkAssignment::StalkAssignment(FinitePoset base, AlgebraPtr algebra,
                                   std::vector<Congruence> stalks)
      : base_(std::move(base)), algebra_(std::move(algebra)), stalks_(std::move(stalks)) {
    if (stalks_.size() != base_.size()) {
      throw RangeError("stalk assignment needs exactly one congruence per base point");
    }
    for (const auto& c : stalks_) {
      if (c.algebra() != algebra_) {
        throw AlgebraMismatchError("stalk congruence does not belong to " + algebra_->name());
      }
    }
    for (std::size_t y = 0; y < base_.size(); ++y) {
      for (std::size_t z = 0; z < base_.size(); ++z) {
        if (base_.leq(y, z) && !stalks_[y].leq(stalks_[z])) {
          throw MonotonicityError("assignment is not monotone: " + base_.name(y) + " <= "
                                  + base_.name(z) + " but " + stalks_[y].to_string()
                                  + " is not contained in " + stalks_[z].to_string());
        }
      }
    }
  }

  Congruence StalkAssignment::theta(ElemSet k) const {
    Congruence out = Congruence::full(algebra_);
    for (std::size_t y : k.members()) {
      out = out.meet(stalks_[y]);
    }
    return out;
  }

  std::string to_string(FrameHomFailure::Kind kind) {
    switch (kind) {
      case FrameHomFailure::Kind::empty_not_full:
        return "theta(empty) is not the full congruence";
      case FrameHomFailure::Kind::whole_not_diagonal:
        return "theta(Y) is not the diagonal";
      case FrameHomFailure::Kind::meet_not_preserved:
        return "unions are not sent to meets";
      case FrameHomFailure::Kind::join_not_preserved:
        return "intersections are not sent to joins";
      case FrameHomFailure::Kind::not_commuting:
        return "image is not pairwise commuting";
    }
    return "unknown";
  }

  FrameHomValidation validate_frame_hom(const StalkAssignment& sa) {
    const auto& y = sa.base();
    FrameHomValidation out;
    auto fail = [&](FrameHomFailure::Kind kind, ElemSet k1, ElemSet k2, std::string detail) {
      std::string msg = to_string(kind);
      if (!detail.empty()) {
        msg += ": " + detail;
      }
      out.failure = FrameHomFailure{kind, k1, k2, std::move(msg)};
      return out;
    };

    if (!sa.theta(ElemSet{}).is_full()) {
      return fail(FrameHomFailure::Kind::empty_not_full, {}, {}, "");
    }
    if (!sa.theta(y.all()).is_diagonal()) {
      return fail(FrameHomFailure::Kind::whole_not_diagonal, y.all(), y.all(),
                  "theta(Y) = " + sa.theta(y.all()).to_string());
    }
    const auto ups = enumerate_sets(y, Direction::up);
    std::vector<Congruence> image;
    image.reserve(ups.size());
    for (ElemSet k : ups) {
      image.push_back(sa.theta(k));
    }
    auto at = [&](ElemSet k) -> const Congruence& {
      return image[static_cast<std::size_t>(std::lower_bound(ups.begin(), ups.end(), k)
                                            - ups.begin())];
    };
    for (std::size_t i = 0; i < ups.size(); ++i) {
      for (std::size_t j = i + 1; j < ups.size(); ++j) {
        if (!(at(ups[i] | ups[j]) == image[i].meet(image[j]))) {
          return fail(FrameHomFailure::Kind::meet_not_preserved, ups[i], ups[j],
                      "K1 = " + format_set(y, ups[i]) + ", K2 = " + format_set(y, ups[j]));
        }
        if (!(at(ups[i] & ups[j]) == image[i].join(image[j]))) {
          return fail(FrameHomFailure::Kind::join_not_preserved, ups[i], ups[j],
                      "K1 = " + format_set(y, ups[i]) + ", K2 = " + format_set(y, ups[j])
                          + ", theta(K1 n K2) = " + at(ups[i] & ups[j]).to_string()
                          + ", theta(K1) v theta(K2) = " + image[i].join(image[j]).to_string());
        }
      }
    }
    for (std::size_t i = 0; i < ups.size(); ++i) {
      for (std::size_t j = i + 1; j < ups.size(); ++j) {
        if (auto c = commute(image[i], image[j]); !c) {
          const auto& alg = *sa.algebra();
          return fail(FrameHomFailure::Kind::not_commuting, ups[i], ups[j],
                      "theta(" + format_set(y, ups[i]) + ") = " + image[i].to_string()
                          + " and theta(" + format_set(y, ups[j]) + ") = "
                          + image[j].to_string() + ", witness ("
                          + alg.element_name(c.witness->first) + ","
                          + alg.element_name(c.witness->second) + ")");
        }
      }
    }
    std::set<std::vector<std::size_t>> distinct;
    for (const auto& c : image) {
      distinct.insert(c.labels());
    }
    out.hom = FrameHom{sa, ups.size(), distinct.size()};
    return out;
  }

  // ---------------------------------------------------------------------------
  // Sheaves and sections

  Section Section::restrict_to(ElemSet s) const {
    Section out{domain & s, values};
    for (std::size_t y = 0; y < out.values.size(); ++y) {
      if (!out.domain.contains(y)) {
        out.values[y] = 0;
      }
    }
    return out;
  }

  SheafRep::SheafRep(StalkAssignment assignment) : assignment_(std::move(assignment)) {
    stalks_.reserve(base().size());
    for (std::size_t y = 0; y < base().size(); ++y) {
      stalks_.push_back(quotient(algebra(), assignment_.stalk(y)));
    }
  }

  Section SheafRep::canonical_section(std::size_t a) const {
    return canonical_section(a, base().all());
  }

  Section SheafRep::canonical_section(std::size_t a, ElemSet domain) const {
    Section s{domain, std::vector<std::size_t>(base().size(), 0)};
    for (std::size_t y : domain.members()) {
      s.values[y] = germ(a, y);
    }
    return s;
  }

  std::string SheafRep::section_name(const Section& s) const {
    std::string out = "[";
    bool first = true;
    for (std::size_t y : s.domain.members()) {
      out += (first ? "" : ";") + base().name(y) + "="
             + stalks_[y].algebra->element_name(s.values[y]);
      first = false;
    }
    return out + "]";
  }

  SheafRep build_sheaf(const StalkAssignment& sa) { return SheafRep(sa); }
  SheafRep build_sheaf(const FrameHom& hom) { return SheafRep(hom.assignment); }

  std::vector<Section> enumerate_sections(const SheafRep& f, ElemSet s) {
    const auto& y = f.base();
    const auto mins = y.minimal(s).members();
    const std::size_t n = f.algebra()->size();
    // Local germs available on each minimal cone, deduplicated.
    std::vector<std::vector<Section>> local(mins.size());
    for (std::size_t i = 0; i < mins.size(); ++i) {
      const ElemSet cone = y.up(mins[i]) & s;
      std::set<Section> distinct;
      for (std::size_t a = 0; a < n; ++a) {
        distinct.insert(f.canonical_section(a, cone));
      }
      local[i].assign(distinct.begin(), distinct.end());
    }
    std::vector<Section> out;
    Section cur{ElemSet{}, std::vector<std::size_t>(y.size(), 0)};
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (i == mins.size()) {
        out.push_back(cur);
        return;
      }
      for (const auto& g : local[i]) {
        bool consistent = true;
        for (std::size_t z : (g.domain & cur.domain).members()) {
          if (g.values[z] != cur.values[z]) {
            consistent = false;
            break;
          }
        }
        if (!consistent) {
          continue;
        }
        const Section saved = cur;
        for (std::size_t z : g.domain.members()) {
          cur.values[z] = g.values[z];
        }
        cur.domain = cur.domain | g.domain;
        self(self, i + 1);
        cur = saved;
      }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  SectionAlgebra sections_over(const SheafRep& f, ElemSet s) {
    SectionAlgebra out;
    out.sections = enumerate_sections(f, s);
    const auto& secs = out.sections;
    const std::size_t m = secs.size();
    std::map<Section, std::size_t> index;
    std::vector<std::string> carrier;
    for (std::size_t i = 0; i < m; ++i) {
      index.emplace(secs[i], i);
      carrier.push_back(f.section_name(secs[i]));
    }
    const auto& a = *f.algebra();
    std::vector<std::vector<std::size_t>> tables;
    for (std::size_t k = 0; k < a.operation_count(); ++k) {
      const std::size_t r = a.arity(k);
      const std::size_t count = int_pow(m, r);
      if (count > (std::size_t{1} << 22)) {
        throw SizeLimitError("section algebra too large to tabulate");
      }
      std::vector<std::size_t> table(count);
      std::vector<std::size_t> germs(r);
      for (std::size_t code = 0; code < count; ++code) {
        const auto args = decode_tuple(code, r, m);
        Section result{s, std::vector<std::size_t>(f.base().size(), 0)};
        for (std::size_t y : s.members()) {
          for (std::size_t i = 0; i < r; ++i) {
            germs[i] = secs[args[i]].values[y];
          }
          result.values[y] = f.stalk(y).algebra->apply(k, germs);
        }
        auto it = index.find(result);
        if (it == index.end()) {
          throw InternalInvariantError("sections over " + format_set(f.base(), s)
                                       + " are not closed under " + a.signature()[k].name);
        }
        table[code] = it->second;
      }
      tables.push_back(std::move(table));
    }
    out.algebra = Algebra::make("Gamma" + format_set(f.base(), s), std::move(carrier),
                                a.signature(), std::move(tables));
    return out;
  }

  ElemSet equalizer(const SheafRep& f, std::size_t a, std::size_t b) {
    if (a >= f.algebra()->size() || b >= f.algebra()->size()) {
      throw UnknownElementError("equalizer of elements outside the carrier");
    }
    ElemSet out;
    for (std::size_t y = 0; y < f.base().size(); ++y) {
      if (f.germ(a, y) == f.germ(b, y)) {
        out.insert(y);
      }
    }
    return out;
  }

  ElemSet equalizer(const SheafRep& f, const std::string& a, const std::string& b) {
    return equalizer(f, f.algebra()->index(a), f.algebra()->index(b));
  }

  Congruence theta_of_sheaf_at(const SheafRep& f, ElemSet k) {
    const std::size_t n = f.algebra()->size();
    std::vector<std::size_t> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
      labels[a] = a;
      for (std::size_t b = 0; b < a; ++b) {
        if (k.subset_of(equalizer(f, a, b))) {
          labels[a] = labels[b];
          break;
        }
      }
    }
    // The relation must already be an equivalence; confirm before trusting
    // the labels.
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if ((labels[a] == labels[b]) != k.subset_of(equalizer(f, a, b))) {
          throw InternalInvariantError("equalizer relation over " + format_set(f.base(), k)
                                       + " is not an equivalence");
        }
      }
    }
    return Congruence::from_labels(f.algebra(), labels);
  }

  StalkAssignment theta_of_sheaf(const SheafRep& f) {
    std::vector<Congruence> stalks;
    for (std::size_t y = 0; y < f.base().size(); ++y) {
      stalks.push_back(theta_of_sheaf_at(f, f.base().up(y)));
    }
    return StalkAssignment(f.base(), f.algebra(), std::move(stalks));
  }

  SoftnessReport is_soft(const SheafRep& f) {
    for (ElemSet k : enumerate_sets(f.base(), Direction::up)) {
      if (k.empty()) {
        continue;
      }
      std::set<Section> restricted;
      for (std::size_t a = 0; a < f.algebra()->size(); ++a) {
        restricted.insert(f.canonical_section(a, k));
      }
      for (const auto& s : enumerate_sections(f, k)) {
        if (!restricted.count(s)) {
          return SoftnessReport{false, k, s};
        }
      }
    }
    return SoftnessReport{};
  }

  EtaReport eta_check(const SheafRep& f) {
    EtaReport r;
    const auto& a = *f.algebra();
    const auto& y = f.base();
    const auto global = enumerate_sections(f, y.all());
    r.global_sections = global.size();
    std::map<Section, std::size_t> first_preimage;
    for (std::size_t x = 0; x < a.size(); ++x) {
      const auto s = f.canonical_section(x);
      if (!std::binary_search(global.begin(), global.end(), s)) {
        r.surjective = false;
        r.failure = "s_" + a.element_name(x) + " is not a continuous global section";
        return r;
      }
      auto [it, fresh] = first_preimage.emplace(s, x);
      if (!fresh && r.injective) {
        r.injective = false;
        r.failure = "s_" + a.element_name(it->second) + " = s_" + a.element_name(x);
      }
    }
    if (first_preimage.size() != global.size()) {
      r.surjective = false;
      for (const auto& g : global) {
        if (!first_preimage.count(g)) {
          if (r.failure.empty()) {
            r.failure = "global section " + f.section_name(g) + " is not of the form s_a";
          }
          break;
        }
      }
    }
    // s_{f(a..)} = f(s_a, ..) pointwise.
    std::vector<std::size_t> germs;
    for (std::size_t k = 0; k < a.operation_count() && r.homomorphism; ++k) {
      const std::size_t ar = a.arity(k);
      germs.resize(ar);
      for (std::size_t code = 0; code < a.table(k).size() && r.homomorphism; ++code) {
        const auto args = decode_tuple(code, ar, a.size());
        for (std::size_t p = 0; p < y.size(); ++p) {
          for (std::size_t i = 0; i < ar; ++i) {
            germs[i] = f.germ(args[i], p);
          }
          if (f.germ(a.table(k)[code], p) != f.stalk(p).algebra->apply(k, germs)) {
            r.homomorphism = false;
            if (r.failure.empty()) {
              r.failure = "a |-> s_a does not preserve " + a.signature()[k].name;
            }
            break;
          }
        }
      }
    }
    return r;
  }

  namespace {

    // Kernel of a |-> s_a|k, read off the section values.
    Congruence restriction_kernel(const SheafRep& f, ElemSet k) {
      std::map<Section, std::size_t> label_of;
      std::vector<std::size_t> labels(f.algebra()->size());
      for (std::size_t a = 0; a < labels.size(); ++a) {
        auto [it, _] = label_of.emplace(f.canonical_section(a, k), label_of.size());
        labels[a] = it->second;
      }
      return Congruence::from_labels(f.algebra(), labels);
    }

  }  // namespace

  GlobalSectionsReport global_sections_check(const FrameHom& hom) {
    GlobalSectionsReport r;
    const auto f = build_sheaf(hom);
    r.eta = eta_check(f);
    if (!r.eta.isomorphism()) {
      r.holds = false;
      r.failure = r.eta.failure;
      return r;
    }
    for (ElemSet k : enumerate_sets(f.base(), Direction::up)) {
      if (!(restriction_kernel(f, k) == hom.assignment.theta(k))) {
        r.holds = false;
        r.kernel_mismatch = k;
        r.failure = "kernel of restriction to " + format_set(f.base(), k) + " is "
                    + restriction_kernel(f, k).to_string() + ", expected "
                    + hom.assignment.theta(k).to_string();
        return r;
      }
    }
    return r;
  }

  RoundtripReport roundtrip_main(const FrameHom& hom) {
    const auto f = build_sheaf(hom);
    if (auto soft = is_soft(f); !soft) {
      return RoundtripReport{false, "F_theta is not soft: section " + f.section_name(*soft.unextendable)
                                        + " over " + format_set(f.base(), *soft.up_set)
                                        + " does not extend"};
    }
    if (!(theta_of_sheaf(f) == hom.assignment)) {
      return RoundtripReport{false, "theta of F_theta differs from theta"};
    }
    return RoundtripReport{};
  }

  std::vector<ElemSet> direct_image_mismatches(const SheafRep& f, const MonotoneMap& map,
                                               const SheafRep& g) {
    std::vector<ElemSet> bad;
    for (ElemSet k : enumerate_sets(g.base(), Direction::up)) {
      const ElemSet pre = map.preimage(k);
      const bool kernels_match = restriction_kernel(g, k) == f.assignment().theta(pre);
      const bool sizes_match = enumerate_sections(g, k).size() == enumerate_sections(f, pre).size();
      if (!kernels_match || !sizes_match) {
        bad.push_back(k);
      }
    }
    return bad;
  }

  SheafRep direct_image(const SheafRep& f, const MonotoneMap& map) {
    if (!(map.source() == f.base())) {
      throw PreconditionError("direct image map does not start at the sheaf's base");
    }
    if (auto v = validate_frame_hom(f.assignment()); !v.ok()) {
      throw SoftnessRequiredError("direct image needs a validated frame homomorphism: "
                                  + v.failure->message);
    }
    if (auto soft = is_soft(f); !soft) {
      throw SoftnessRequiredError("direct image needs a soft sheaf; the section "
                                  + f.section_name(*soft.unextendable) + " does not extend");
    }
    const auto& z = map.target();
    std::vector<Congruence> stalks;
    for (std::size_t p = 0; p < z.size(); ++p) {
      stalks.push_back(f.assignment().theta(map.preimage(z.up(p))));
    }
    SheafRep g(StalkAssignment(z, f.algebra(), std::move(stalks)));
    if (auto bad = direct_image_mismatches(f, map, g); !bad.empty()) {
      throw InternalInvariantError("direct image disagrees with the preimage sections over "
                                   + format_set(z, bad.front()));
    }
    return g;
  }

  LimitReport limit_check(const SheafRep& f, ElemSet u) {
    const auto& y = f.base();
    if (!y.is_closed(u, Direction::up)) {
      throw PreconditionError(format_set(y, u) + " is not an up-set");
    }
    LimitReport r;
    std::vector<ElemSet> diagram;
    for (ElemSet k : enumerate_sets(y, Direction::up)) {
      if (k.subset_of(u)) {
        diagram.push_back(k);
      }
    }
    // Larger sets first, so every superset of K is decided before K.
    std::stable_sort(diagram.begin(), diagram.end(),
                     [](ElemSet a, ElemSet b) { return a.size() > b.size(); });
    std::vector<std::vector<Section>> gammas;
    for (ElemSet k : diagram) {
      gammas.push_back(enumerate_sections(f, k));
    }
    std::vector<Section> chosen(diagram.size());
    std::set<std::vector<Section>> families;
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (i == diagram.size()) {
        families.insert(chosen);
        return;
      }
      for (const auto& t : gammas[i]) {
        bool consistent = true;
        for (std::size_t j = 0; j < i && consistent; ++j) {
          if (diagram[i].subset_of(diagram[j]) && !(chosen[j].restrict_to(diagram[i]) == t)) {
            consistent = false;
          }
        }
        if (consistent) {
          chosen[i] = t;
          self(self, i + 1);
        }
      }
    };
    rec(rec, 0);
    r.consistent_families = families.size();

    const auto gamma_u = enumerate_sections(f, u);
    r.sections = gamma_u.size();
    std::set<std::vector<Section>> images;
    for (const auto& s : gamma_u) {
      std::vector<Section> fam;
      for (std::size_t i = 0; i < diagram.size(); ++i) {
        auto t = s.restrict_to(diagram[i]);
        if (!std::binary_search(gammas[i].begin(), gammas[i].end(), t)) {
          r.holds = false;
          r.failure = "restriction of " + f.section_name(s) + " to "
                      + format_set(y, diagram[i]) + " is not continuous";
          return r;
        }
        fam.push_back(std::move(t));
      }
      images.insert(std::move(fam));
    }
    if (images != families) {
      r.holds = false;
      r.failure = "Gamma(U) has " + std::to_string(images.size())
                  + " distinct images but the limit has "
                  + std::to_string(families.size()) + " consistent families";
    }
    return r;
  }

}  // namespace sheafcon
