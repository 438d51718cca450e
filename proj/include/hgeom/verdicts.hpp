#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgeom/drivers.hpp"
#include "hgeom/group.hpp"
#include "hgeom/linrep.hpp"

namespace hgeom {

/// Whether lift0(G) embeds in a harmonic matroid.
struct GroupVerdict {
  bool embeddable = false;
  GroupClass group_class;
  // Embeddable: an additive representation, checked by the triple oracle.
  std::optional<Representation> representation;
  bool representation_verified = false;
  // Not embeddable: a one-phase certificate over lift0(G).
  Certificate certificate;
};

GroupVerdict verdict_group(const FiniteAbelianGroup& g, std::size_t budget = kDefaultBudget);

/// Whether M(n) is representable (n prime) together with its certificate:
/// the extension of M(n) to lift0(Z_n), followed for composite n by the
/// applicable non-embedding derivation on the extended geometry.
struct MnVerdict {
  int n = 0;
  bool representable = false;
  std::vector<long long> characteristic;  // {n} when representable
  Certificate certificate;
  bool extension_isomorphic = false;  // extended geometry ~ lift0(Z_n)
};

MnVerdict verdict_mn(int n, std::size_t budget = kDefaultBudget);

}  // namespace hgeom
