#include "hgeom/group.hpp"

#include <numeric>

namespace hgeom {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long long gcd(long long a, long long b) { return std::gcd(a, b); }

long long mod(long long a, long long m) {
  auto r = a % m;
  return r < 0 ? r + m : r;
}

long long inverse_mod(long long a, long long m) {
  long long old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    auto q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw std::invalid_argument(std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  return mod(old_s, m);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("group needs at least one factor");
  for (int f : factors_) {
    if (f < 2) throw std::invalid_argument("cyclic factor orders must be >= 2");
    order_ *= f;
    exponent_ = std::lcm(exponent_, f);
  }
}

GroupElement FiniteAbelianGroup::element(int index) const {
  GroupElement g{std::vector<int>(factors_.size(), 0)};
  for (auto k = factors_.size(); k-- > 0;) {
    g.coords[k] = index % factors_[k];
    index /= factors_[k];
  }
  return g;
}

int FiniteAbelianGroup::index(const GroupElement& g) const {
  int idx = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) idx = idx * factors_[k] + g.coords[k];
  return idx;
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (int i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement{std::vector<int>(factors_.size(), 0)};
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement out = a;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    out.coords[k] = (a.coords[k] + b.coords[k]) % factors_[k];
  }
  return out;
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const { return scale(a, -1); }

GroupElement FiniteAbelianGroup::scale(const GroupElement& a, long long k) const {
  GroupElement out = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out.coords[i] = static_cast<int>(mod(k * a.coords[i], factors_[i]));
  }
  return out;
}

int FiniteAbelianGroup::order_of(const GroupElement& a) const {
  int ord = 1;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    ord = std::lcm(ord, factors_[k] / std::gcd(factors_[k], a.coords[k]));
  }
  return ord;
}

std::string FiniteAbelianGroup::render(const GroupElement& g) const {
  if (factors_.size() == 1) return std::to_string(g.coords[0]);
  std::string out = "(";
  for (std::size_t k = 0; k < g.coords.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(g.coords[k]);
  }
  return out + ")";
}

GroupClass classify(const FiniteAbelianGroup& g) {
  const int e = g.exponent();
  if (g.order() < 2) throw std::invalid_argument("trivial group");
  if (is_prime(e)) {
    int k = 0;
    for (int o = g.order(); o > 1; o /= e) ++k;
    return ElementaryAbelian{e, k};
  }
  auto primes = prime_factors(e);
  for (auto p : primes) {
    if (e % (p * p) == 0) return HasPrimeSquare{static_cast<int>(p)};
  }
  return HasTwoPrimes{static_cast<int>(primes[0]), static_cast<int>(primes[1])};
}

std::string describe(const GroupClass& c) {
  struct {
    std::string operator()(const ElementaryAbelian& v) const {
      return "ElementaryAbelian(" + std::to_string(v.p) + "," + std::to_string(v.k) + ")";
    }
    std::string operator()(const HasPrimeSquare& v) const {
      return "HasPrimeSquare(" + std::to_string(v.p) + ")";
    }
    std::string operator()(const HasTwoPrimes& v) const {
      return "HasTwoPrimes(" + std::to_string(v.p) + "," + std::to_string(v.q) + ")";
    }
  } visitor;
  return std::visit(visitor, c);
}

GroupElement element_of_order(const FiniteAbelianGroup& g, int order) {
  for (std::size_t k = 0; k < g.factors().size(); ++k) {
    if (g.factors()[k] % order == 0) {
      auto e = g.zero();
      e.coords[k] = g.factors()[k] / order;
      return e;
    }
  }
  throw std::invalid_argument("no cyclic factor divisible by " + std::to_string(order));
}

}  // namespace hgeom
