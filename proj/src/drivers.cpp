#include "hgeom/drivers.hpp"

#include <stdexcept>

namespace hgeom {

CyclicCopy cyclic_copy(const Rank3Geometry& geom, const FiniteAbelianGroup& group,
                       const GroupElement& generator, const LiftNaming& naming) {
  CyclicCopy copy;
  copy.order = group.order_of(generator);
  for (int k = 0; k < copy.order; ++k) {
    const auto label = group.render(group.scale(generator, k));
    copy.a.push_back(geom.require(naming.prefix[0] + "_" + label));
    copy.b.push_back(geom.require(naming.prefix[1] + "_" + label));
    copy.c.push_back(geom.require(naming.prefix[2] + "_" + label));
  }
  return copy;
}

namespace {

// Stage 1: HP(A_0, B_0, C_0, A_i, D, C_i, B_i).
// Stage s >= 2: HP(A_0, x_s, x_{s+1}, C_{si}, B_{si}, A_i, A_{s/(s-1) i}),
// skipping indices with si = 0 where the configuration degenerates.
std::vector<HpTuple> stage_witnesses(int s, const std::vector<CyclicCopy>& copies, PointId big_d,
                                     const std::vector<PointId>& chain) {
  std::vector<HpTuple> out;
  for (const auto& cp : copies) {
    const int n = cp.order;
    const auto a0 = cp.a[0];
    if (s == 1) {
      for (int i = 1; i < n; ++i) {
        out.push_back({a0, cp.b[0], cp.c[0], cp.a[i], big_d, cp.c[i], cp.b[i]});
      }
      continue;
    }
    const auto ratio = mod(s * inverse_mod(s - 1, n), n);
    for (int i = 1; i < n; ++i) {
      const auto si = static_cast<int>(mod(static_cast<long long>(s) * i, n));
      if (si == 0) continue;
      const auto k = static_cast<int>(mod(ratio * i, n));
      out.push_back({a0, chain[s], chain[s + 1], cp.c[si], cp.b[si], cp.a[i], cp.a[k]});
    }
  }
  return out;
}

}  // namespace

void run_harmonic_chain(Derivation& d, int p, const std::vector<CyclicCopy>& copies, PointId big_d) {
  for (auto& br : d.live()) {
    // x_1 := B_0 and x_2 := C_0 anchor the chain.
    br.chain = {0, copies.front().b[0], copies.front().c[0]};
  }
  for (int s = 1; s <= p - 1 && !d.live().empty(); ++s) {
    const auto name = "x_" + std::to_string(s + 2);
    for (auto& br : d.live()) {
      for (const auto& w : stage_witnesses(s, copies, big_d, br.chain)) {
        auto xp = conjugate(br.state, *br.node, w, name, d.budget());
        if (br.chain.size() == static_cast<std::size_t>(s + 2)) br.chain.push_back(xp);
      }
    }
    d.close_all();
  }
}

DerivationTrace derive_prime_power(int p, int n, std::size_t budget) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (n < 2) throw std::invalid_argument("prime-power derivation needs n >= 2");
  int order = 1;
  for (int k = 0; k < n; ++k) order *= p;
  const auto group = FiniteAbelianGroup::cyclic(order);
  Derivation d(lift0(group), {}, budget);
  const auto& base = d.initial().base();
  const auto copy = cyclic_copy(base, group, group.element(1), LiftNaming::upper());
  d.note("group Z_" + std::to_string(order) + "; chain x_3..x_" + std::to_string(p + 1));
  d.note("terminal witness index i = p^(n-1) = " + std::to_string(order / p) +
         " (B_{p i} = B_0); the collinearity reached is {A_0, A_" + std::to_string(order / p) +
         ", B_0}, not {A_0, A_" + std::to_string(order - 1) + ", B_0}");
  run_harmonic_chain(d, p, {copy}, base.require("D"));
  return d.finish();
}

DerivationTrace derive_two_primes(int p, int q, std::size_t budget) {
  if (!is_prime(p) || !is_prime(q) || p >= q) {
    throw std::invalid_argument("two-prime derivation needs primes p < q");
  }
  const FiniteAbelianGroup group({p, q});
  Derivation d(lift0(group), {}, budget);
  const auto& base = d.initial().base();
  const auto zq = cyclic_copy(base, group, GroupElement{{0, 1}}, LiftNaming::upper());
  const auto zp = cyclic_copy(base, group, GroupElement{{1, 0}}, LiftNaming::upper());
  d.note("group Z_" + std::to_string(p) + " x Z_" + std::to_string(q) +
         "; witnesses from the Z_q copy (second coordinate) then the Z_p copy (first coordinate)");
  d.note("chain x_3..x_" + std::to_string(p + 1) + "; expected identification x_" +
         std::to_string(p + 1) + " = B_(0,0)");
  run_harmonic_chain(d, p, {zq, zp}, base.require("D"));
  return d.finish();
}

Extension extend_mn(int n, std::size_t budget) {
  Derivation d(m_matroid(n), ClosureOptions{false}, budget);
  const auto& base = d.initial().base();
  auto a = [&](int i) { return base.require("a_" + std::to_string(mod(i, n))); };
  auto b = [&](int i) { return base.require("b_" + std::to_string(mod(i, n))); };
  const auto big_d = base.require("d");
  for (auto& br : d.live()) br.chain = {base.require("c_0"), base.require("c_1")};

  for (int j = 1; j <= n - 2; ++j) {
    const auto name = "c_" + std::to_string(j + 1);
    for (auto& br : d.live()) {
      for (int i = 0; i < n; ++i) {
        const HpTuple w{br.chain[j], br.chain[j - 1], big_d, a(i), b(i + j), b(i + j + 1), a(i + 1)};
        auto cp = conjugate(br.state, *br.node, w, name, d.budget());
        if (br.chain.size() == static_cast<std::size_t>(j + 1)) br.chain.push_back(cp);
      }
    }
    d.close_all();
    if (d.live().empty()) {
      throw std::logic_error("extension of M(" + std::to_string(n) + ") reached a contradiction");
    }
  }
  if (d.live().size() != 1) {
    throw std::logic_error("extension of M(" + std::to_string(n) + ") left " +
                           std::to_string(d.live().size()) + " open branches");
  }
  auto geometry = d.live().front().state.materialize();
  d.note("extension of M(" + std::to_string(n) + ") by c_2..c_" + std::to_string(n - 1));
  return {std::move(geometry), d.finish()};
}

}  // namespace hgeom
