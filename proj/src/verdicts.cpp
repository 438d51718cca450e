#include "hgeom/verdicts.hpp"

#include <stdexcept>

#include "hgeom/constructions.hpp"

namespace hgeom {

namespace {

// The chain copies used for a non-elementary group: the Z_{p^2} subgroup, or
// the Z_q subgroup followed by the Z_p subgroup.
std::pair<int, std::vector<GroupElement>> chain_generators(const FiniteAbelianGroup& g,
                                                           const GroupClass& cls) {
  if (const auto* sq = std::get_if<HasPrimeSquare>(&cls)) {
    return {sq->p, {element_of_order(g, sq->p * sq->p)}};
  }
  const auto& two = std::get<HasTwoPrimes>(cls);
  return {two.p, {element_of_order(g, two.q), element_of_order(g, two.p)}};
}

DerivationTrace chain_derivation(const Rank3Geometry& base, const FiniteAbelianGroup& g,
                                 const GroupClass& cls, const LiftNaming& naming,
                                 std::size_t budget) {
  Derivation d(base, {}, budget);
  const auto& b = d.initial().base();
  const auto [p, gens] = chain_generators(g, cls);
  std::vector<CyclicCopy> copies;
  std::string note = describe(cls) + "; chain copies generated by";
  for (const auto& gen : gens) {
    copies.push_back(cyclic_copy(b, g, gen, naming));
    note += " " + g.render(gen) + " (order " + std::to_string(g.order_of(gen)) + ")";
  }
  d.note(note);
  run_harmonic_chain(d, p, copies, b.require(naming.d));
  return d.finish();
}

}  // namespace

GroupVerdict verdict_group(const FiniteAbelianGroup& g, std::size_t budget) {
  if (g.order() < 2) throw std::invalid_argument("verdicts need a group of order >= 2");
  GroupVerdict v;
  v.group_class = classify(g);
  if (const auto* ea = std::get_if<ElementaryAbelian>(&v.group_class)) {
    v.embeddable = true;
    v.representation = additive_rep(ea->p, ea->k);
    v.representation_verified = verify_representation(*v.representation->geometry, *v.representation);
    return v;
  }
  auto base = lift0(g);
  auto trace = chain_derivation(base, g, v.group_class, LiftNaming::upper(), budget);
  v.embeddable = trace.claimed != Status::Contradiction;
  v.certificate.phases.push_back({"non-embedding of lift0", std::move(base), std::move(trace)});
  return v;
}

MnVerdict verdict_mn(int n, std::size_t budget) {
  if (n < 2) throw std::invalid_argument("verdict_mn needs n >= 2");
  MnVerdict v;
  v.n = n;
  auto ext = extend_mn(n, budget);
  const auto group = FiniteAbelianGroup::cyclic(n);
  v.extension_isomorphic = are_isomorphic(ext.geometry, lift0(group)).has_value();
  v.certificate.phases.push_back({"extension of M(" + std::to_string(n) + ")", m_matroid(n),
                                  std::move(ext.trace)});
  if (is_prime(n)) {
    v.representable = true;
    v.characteristic = {n};
    return v;
  }
  auto trace = chain_derivation(ext.geometry, group, classify(group), LiftNaming::lower(), budget);
  v.representable = trace.claimed != Status::Contradiction;
  v.certificate.phases.push_back({"non-embedding of the extension", std::move(ext.geometry),
                                  std::move(trace)});
  return v;
}

}  // namespace hgeom
