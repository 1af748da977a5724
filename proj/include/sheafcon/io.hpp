#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sheafcon/algebra.hpp"
#include "sheafcon/dlat.hpp"
#include "sheafcon/poset.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon {

  using Json = nlohmann::ordered_json;

  /// Reads and parses a JSON document. Throws ParseError.
  Json load_json(const std::filesystem::path& path);

  /// {"elements": [..], "covers": [[x, y], ..]} with x < y for each pair.
  Json poset_to_json(const FinitePoset& p);
  /// Throws ParseError on malformed documents; CycleError,
  /// DuplicateElementError, UnknownElementError from the poset itself.
  FinitePoset poset_from_json(const Json& j);

  /// {"name", "carrier", "signature": [{"symbol", "arity"}], "tables":
  /// {symbol: {"(x,y)": z}}}. Tuple keys list argument names in parentheses;
  /// names may themselves contain bracketed commas.
  Json algebra_to_json(const Algebra& a);
  AlgebraPtr algebra_from_json(const Json& j);

  /// Splits "(a,(b,c),{d,e})" into its top-level components. Throws ParseError.
  std::vector<std::string> split_tuple_key(const std::string& key);
  std::string tuple_key(const std::vector<std::string>& names);

  /// A congruence as a list of blocks of element names.
  Json congruence_to_json(const Congruence& c);
  Congruence congruence_from_json(const AlgebraPtr& a, const Json& j);

  /// {"poset": .., "algebra": .., "stalks": {y: [[..], ..]}}. The poset and
  /// algebra are inline objects or paths relative to `base_dir`.
  Json stalk_assignment_to_json(const StalkAssignment& sa);
  StalkAssignment stalk_assignment_from_json(const Json& j,
                                             const std::filesystem::path& base_dir = {});

  /// {"target": poset, "map": {y: z}}; the source is given separately.
  Json monotone_map_to_json(const MonotoneMap& f);
  MonotoneMap monotone_map_from_json(const Json& j, const FinitePoset& source,
                                     const std::filesystem::path& base_dir = {});

  /// {"X": poset, "Y": poset, "map": {x: y}} with an optional "algebra".
  /// When the algebra is present, X may be omitted and defaults to its
  /// dual; if given it must equal the dual.
  struct DecompositionFile {
    Decomposition q;
    std::optional<PriestleyDual> dual;
  };
  Json decomposition_to_json(const Decomposition& q);
  DecompositionFile decomposition_from_json(const Json& j,
                                            const std::filesystem::path& base_dir = {});

}  // namespace sheafcon
