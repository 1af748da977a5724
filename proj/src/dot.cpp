#include "sheafcon/dot.hpp"

#include <map>
#include <sstream>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  namespace {

    std::string quote(const std::string& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }

    const char* colour(std::size_t i) {
      static const char* palette[] = {"lightblue", "lightsalmon", "palegreen", "plum",
                                      "khaki", "lightpink", "lightcyan", "wheat"};
      return palette[i % (sizeof palette / sizeof palette[0])];
    }

  }  // namespace

  std::string poset_dot(const FinitePoset& p, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (std::size_t x = 0; x < p.size(); ++x) {
      os << "  " << quote(p.name(x)) << ";\n";
    }
    for (auto [x, y] : p.cover_pairs()) {
      os << "  " << quote(p.name(x)) << " -> " << quote(p.name(y)) << " [arrowhead=none];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string congruence_lattice_dot(const CongruenceLattice& con) {
    std::ostringstream os;
    os << "digraph " << quote("Con " + con.algebra()->name())
       << " {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < con.size(); ++i) {
      os << "  c" << i << " [label=" << quote(con[i].to_string()) << "];\n";
    }
    for (auto [i, j] : con.cover_pairs()) {
      os << "  c" << i << " -> c" << j << " [arrowhead=none];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string etale_dot(const SheafRep& f) {
    const auto& y = f.base();
    const auto& a = *f.algebra();
    std::ostringstream os;
    os << "digraph " << quote("etale " + a.name()) << " {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    auto node = [&](std::size_t p, std::size_t block) {
      return quote(y.name(p) + ":" + f.stalk(p).algebra->element_name(block));
    };
    for (std::size_t p = 0; p < y.size(); ++p) {
      os << "  subgraph " << quote("cluster_" + std::to_string(p)) << " {\n    label="
         << quote(y.name(p)) << ";\n";
      const auto& stalk = *f.stalk(p).algebra;
      for (std::size_t b = 0; b < stalk.size(); ++b) {
        os << "    " << node(p, b) << " [label=" << quote(stalk.element_name(b)) << "];\n";
      }
      os << "  }\n";
    }
    for (auto [lo, hi] : y.cover_pairs()) {
      std::map<std::pair<std::size_t, std::size_t>, std::string> traced;
      for (std::size_t e = 0; e < a.size(); ++e) {
        auto& label = traced[{f.germ(e, lo), f.germ(e, hi)}];
        label += (label.empty() ? "" : ",") + a.element_name(e);
      }
      for (const auto& [ends, label] : traced) {
        os << "  " << node(lo, ends.first) << " -> " << node(hi, ends.second)
           << " [style=dashed, label=" << quote(label) << "];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  std::string decomposition_dot(const Decomposition& q) {
    std::ostringstream os;
    os << "digraph decomposition {\n  rankdir=BT;\n  node [shape=circle, style=filled];\n";
    for (std::size_t x = 0; x < q.x.size(); ++x) {
      os << "  " << quote(q.x.name(x)) << " [label=" << quote(q.x.name(x) + " -> " + q.y.name(q.map[x]))
         << ", fillcolor=" << colour(q.map[x]) << "];\n";
    }
    for (auto [x, z] : q.x.cover_pairs()) {
      os << "  " << quote(q.x.name(x)) << " -> " << quote(q.x.name(z)) << " [arrowhead=none];\n";
    }
    os << "}\n";
    return os.str();
  }

  DotKind parse_dot_kind(const std::string& kind) {
    if (kind == "poset") {
      return DotKind::poset;
    }
    if (kind == "conlat") {
      return DotKind::conlat;
    }
    if (kind == "etale") {
      return DotKind::etale;
    }
    if (kind == "decomposition") {
      return DotKind::decomposition;
    }
    throw UnsupportedObjectError("cannot export '" + kind
                                 + "' as DOT; expected poset, conlat, etale or decomposition");
  }

}  // namespace sheafcon
