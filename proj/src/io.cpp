#include "sheafcon/io.hpp"

#include <fstream>
#include <sstream>

#include "sheafcon/errors.hpp"

namespace sheafcon {

  namespace {

    template <class F>
    auto guarded(const std::string& what, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (const Json::exception& e) {
        throw ParseError("malformed " + what + ": " + e.what());
      }
    }

    std::string name_of(const Json& j) {
      if (j.is_string()) {
        return j.get<std::string>();
      }
      if (j.is_number() || j.is_boolean()) {
        return j.dump();
      }
      throw ParseError("expected an element name, got " + j.dump());
    }

    const Json& field(const Json& j, const char* key, const std::string& what) {
      if (!j.is_object()) {
        throw ParseError(what + " must be an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        throw ParseError(what + " has no \"" + key + "\" field");
      }
      return *it;
    }

    // Inline object or a path relative to base_dir.
    Json resolve(const Json& j, const std::filesystem::path& base_dir) {
      if (j.is_string()) {
        return load_json(base_dir / j.get<std::string>());
      }
      return j;
    }

  }  // namespace

  Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open " + path.string());
    }
    try {
      return Json::parse(in);
    } catch (const Json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }

  Json poset_to_json(const FinitePoset& p) {
    Json covers = Json::array();
    for (auto [x, y] : p.cover_pairs()) {
      covers.push_back({p.name(x), p.name(y)});
    }
    return Json{{"elements", p.names()}, {"covers", covers}};
  }

  FinitePoset poset_from_json(const Json& j) {
    return guarded("poset", [&] {
      std::vector<std::string> elements;
      for (const auto& e : field(j, "elements", "poset")) {
        elements.push_back(name_of(e));
      }
      std::vector<std::pair<std::string, std::string>> rel;
      if (auto it = j.find("covers"); it != j.end()) {
        for (const auto& c : *it) {
          if (!c.is_array() || c.size() != 2) {
            throw ParseError("covers must be pairs, got " + c.dump());
          }
          rel.emplace_back(name_of(c[0]), name_of(c[1]));
        }
      }
      return FinitePoset::make(std::move(elements), rel);
    });
  }

  std::vector<std::string> split_tuple_key(const std::string& key) {
    if (key.size() < 2 || key.front() != '(' || key.back() != ')') {
      throw ParseError("table key '" + key + "' is not a parenthesised tuple");
    }
    const std::string inner = key.substr(1, key.size() - 2);
    std::vector<std::string> out;
    if (inner.empty()) {
      return out;
    }
    int depth = 0;
    std::string cur;
    for (char c : inner) {
      if (c == '(' || c == '[' || c == '{') {
        ++depth;
      } else if (c == ')' || c == ']' || c == '}') {
        if (--depth < 0) {
          throw ParseError("unbalanced brackets in table key '" + key + "'");
        }
      }
      if (c == ',' && depth == 0) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (depth != 0) {
      throw ParseError("unbalanced brackets in table key '" + key + "'");
    }
    out.push_back(cur);
    for (auto& s : out) {
      const auto b = s.find_first_not_of(' ');
      const auto e = s.find_last_not_of(' ');
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }
    return out;
  }

  std::string tuple_key(const std::vector<std::string>& names) {
    std::string s = "(";
    for (std::size_t i = 0; i < names.size(); ++i) {
      s += (i ? "," : "") + names[i];
    }
    return s + ")";
  }

  Json algebra_to_json(const Algebra& a) {
    Json sig = Json::array();
    Json tables = Json::object();
    for (std::size_t k = 0; k < a.operation_count(); ++k) {
      const auto& op = a.signature()[k];
      sig.push_back({{"symbol", op.name}, {"arity", op.arity}});
      Json t = Json::object();
      for (std::size_t code = 0; code < a.table(k).size(); ++code) {
        std::vector<std::string> args;
        for (std::size_t x : decode_tuple(code, op.arity, a.size())) {
          args.push_back(a.element_name(x));
        }
        t[tuple_key(args)] = a.element_name(a.table(k)[code]);
      }
      tables[op.name] = std::move(t);
    }
    return Json{{"name", a.name()}, {"carrier", a.carrier()}, {"signature", sig},
                {"tables", tables}};
  }

  AlgebraPtr algebra_from_json(const Json& j) {
    return guarded("algebra", [&] {
      AlgebraSpec spec;
      spec.name = j.is_object() && j.contains("name") ? name_of(j["name"]) : "A";
      for (const auto& e : field(j, "carrier", "algebra")) {
        spec.carrier.push_back(name_of(e));
      }
      for (const auto& s : field(j, "signature", "algebra")) {
        spec.signature.push_back({name_of(field(s, "symbol", "signature entry")),
                                  field(s, "arity", "signature entry").get<std::size_t>()});
      }
      for (const auto& [symbol, table] : field(j, "tables", "algebra").items()) {
        auto& t = spec.tables[symbol];
        for (const auto& [key, value] : table.items()) {
          t[split_tuple_key(key)] = name_of(value);
        }
      }
      return Algebra::make(spec);
    });
  }

  Json congruence_to_json(const Congruence& c) {
    Json out = Json::array();
    for (const auto& b : c.blocks()) {
      Json block = Json::array();
      for (std::size_t x : b) {
        block.push_back(c.algebra()->element_name(x));
      }
      out.push_back(std::move(block));
    }
    return out;
  }

  Congruence congruence_from_json(const AlgebraPtr& a, const Json& j) {
    return guarded("partition", [&] {
      if (!j.is_array()) {
        throw ParseError("a partition must be a list of blocks");
      }
      std::vector<std::vector<std::size_t>> blocks;
      for (const auto& b : j) {
        if (!b.is_array()) {
          throw ParseError("a block must be a list of elements, got " + b.dump());
        }
        auto& block = blocks.emplace_back();
        for (const auto& e : b) {
          block.push_back(a->index(name_of(e)));
        }
      }
      return Congruence::from_blocks(a, blocks);
    });
  }

  Json stalk_assignment_to_json(const StalkAssignment& sa) {
    Json stalks = Json::object();
    for (std::size_t y = 0; y < sa.base().size(); ++y) {
      stalks[sa.base().name(y)] = congruence_to_json(sa.stalk(y));
    }
    return Json{{"poset", poset_to_json(sa.base())},
                {"algebra", algebra_to_json(*sa.algebra())},
                {"stalks", stalks}};
  }

  StalkAssignment stalk_assignment_from_json(const Json& j, const std::filesystem::path& base_dir) {
    return guarded("frame homomorphism file", [&] {
      const auto base = poset_from_json(resolve(field(j, "poset", "stalk file"), base_dir));
      const auto alg = algebra_from_json(resolve(field(j, "algebra", "stalk file"), base_dir));
      const auto& stalks = field(j, "stalks", "stalk file");
      std::vector<Congruence> out;
      for (std::size_t y = 0; y < base.size(); ++y) {
        auto it = stalks.find(base.name(y));
        if (it == stalks.end()) {
          throw ParseError("no stalk given for '" + base.name(y) + "'");
        }
        out.push_back(congruence_from_json(alg, *it));
      }
      for (const auto& [key, _] : stalks.items()) {
        base.index(key);
      }
      return StalkAssignment(base, alg, std::move(out));
    });
  }

  Json monotone_map_to_json(const MonotoneMap& f) {
    Json m = Json::object();
    for (std::size_t x = 0; x < f.source().size(); ++x) {
      m[f.source().name(x)] = f.target().name(f(x));
    }
    return Json{{"target", poset_to_json(f.target())}, {"map", m}};
  }

  namespace {

    std::vector<std::size_t> read_map(const Json& m, const FinitePoset& from,
                                      const FinitePoset& to) {
      if (!m.is_object()) {
        throw ParseError("map must be an object from source to target names");
      }
      std::vector<std::size_t> out;
      for (std::size_t x = 0; x < from.size(); ++x) {
        auto it = m.find(from.name(x));
        if (it == m.end()) {
          throw ParseError("map has no value for '" + from.name(x) + "'");
        }
        out.push_back(to.index(name_of(*it)));
      }
      for (const auto& [key, _] : m.items()) {
        from.index(key);
      }
      return out;
    }

  }  // namespace

  MonotoneMap monotone_map_from_json(const Json& j, const FinitePoset& source,
                                     const std::filesystem::path& base_dir) {
    return guarded("monotone map", [&] {
      auto target = poset_from_json(resolve(field(j, "target", "map file"), base_dir));
      auto m = read_map(field(j, "map", "map file"), source, target);
      return MonotoneMap(source, std::move(target), std::move(m));
    });
  }

  Json decomposition_to_json(const Decomposition& q) {
    Json m = Json::object();
    for (std::size_t x = 0; x < q.x.size(); ++x) {
      m[q.x.name(x)] = q.y.name(q.map[x]);
    }
    return Json{{"X", poset_to_json(q.x)}, {"Y", poset_to_json(q.y)}, {"map", m}};
  }

  DecompositionFile decomposition_from_json(const Json& j, const std::filesystem::path& base_dir) {
    return guarded("decomposition", [&] {
      DecompositionFile out;
      if (!j.is_object()) {
        throw ParseError("decomposition must be an object");
      }
      if (auto it = j.find("algebra"); it != j.end()) {
        out.dual = priestley_dual(DistLattice::make(algebra_from_json(resolve(*it, base_dir))));
      }
      if (auto it = j.find("X"); it != j.end()) {
        out.q.x = poset_from_json(resolve(*it, base_dir));
        if (out.dual && !(out.q.x == out.dual->x)) {
          throw PreconditionError("X differs from the dual of the given algebra");
        }
      } else if (out.dual) {
        out.q.x = out.dual->x;
      } else {
        throw ParseError("decomposition needs \"X\" or \"algebra\"");
      }
      out.q.y = poset_from_json(resolve(field(j, "Y", "decomposition"), base_dir));
      out.q.map = read_map(field(j, "map", "decomposition"), out.q.x, out.q.y);
      return out;
    });
  }

}  // namespace sheafcon
