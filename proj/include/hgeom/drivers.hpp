#pragma once

#include <string>
#include <vector>

#include "hgeom/constructions.hpp"
#include "hgeom/harmonic.hpp"

namespace hgeom {

/// Points of a cyclic subgroup copy inside a lift geometry: a[k], b[k], c[k]
/// are A, B, C at k times the generator.
struct CyclicCopy {
  int order = 0;
  std::vector<PointId> a, b, c;
};

/// Point-name prefixes of a lift-shaped geometry: {"A","B","C"} and "D" for
/// lift0(G); {"a","b","c"} and "d" for M(n) and its extension.
struct LiftNaming {
  std::array<std::string, 3> prefix{"A", "B", "C"};
  std::string d = "D";
  static LiftNaming upper() { return {}; }
  static LiftNaming lower() { return {{"a", "b", "c"}, "d"}; }
};

CyclicCopy cyclic_copy(const Rank3Geometry& geom, const FiniteAbelianGroup& group,
                       const GroupElement& generator, const LiftNaming& naming);

/// Runs the harmonic chain x_3, ..., x_{p+1} through the identity triangle
/// {A_0, B_0, C_0} with witnesses drawn from each copy, closing after every
/// stage. Stops early once every branch is contradicted.
void run_harmonic_chain(Derivation& d, int p, const std::vector<CyclicCopy>& copies, PointId big_d);

DerivationTrace derive_prime_power(int p, int n, std::size_t budget = kDefaultBudget);
DerivationTrace derive_two_primes(int p, int q, std::size_t budget = kDefaultBudget);

struct Extension {
  Rank3Geometry geometry;  // M(n) plus the introduced points c_2, ..., c_{n-1}
  DerivationTrace trace;
};

/// Extends M(n) by harmonic conjugation along the c-line. Closure runs
/// without harmonic propagation; any contradiction is an error.
Extension extend_mn(int n, std::size_t budget = kDefaultBudget);

}  // namespace hgeom
