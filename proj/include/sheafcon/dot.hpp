#pragma once

#include <string>

#include "sheafcon/algebra.hpp"
#include "sheafcon/dlat.hpp"
#include "sheafcon/poset.hpp"
#include "sheafcon/sheaf.hpp"

namespace sheafcon {

  /// Hasse diagram drawn bottom to top; one node per element in index order.
  std::string poset_dot(const FinitePoset& p, const std::string& name = "poset");

  /// Hasse diagram of Con A; nodes labelled by their partitions.
  std::string congruence_lattice_dot(const CongruenceLattice& con);

  /// One cluster per base point holding the stalk elements; edges follow
  /// the canonical sections along covering pairs, labelled by the elements
  /// whose sections they trace.
  std::string etale_dot(const SheafRep& f);

  /// X drawn bottom to top with each node filled by the colour of q(x).
  std::string decomposition_dot(const Decomposition& q);

  /// Object kinds accepted by export_dot.
  enum class DotKind { poset, conlat, etale, decomposition };

  /// Throws UnsupportedObjectError for anything but the four kind names.
  DotKind parse_dot_kind(const std::string& kind);

}  // namespace sheafcon
