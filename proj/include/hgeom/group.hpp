#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hgeom {

struct GroupElement {
  std::vector<int> coords;
  auto operator<=>(const GroupElement&) const = default;
};

/// Direct product of cyclic groups Z_{f1} x ... x Z_{fk}, written additively.
/// The factor list need not be in invariant-factor form.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> factors);
  static FiniteAbelianGroup cyclic(int n) { return FiniteAbelianGroup({n}); }

  const std::vector<int>& factors() const { return factors_; }
  int order() const { return order_; }
  int exponent() const { return exponent_; }

  /// Elements in mixed-radix order (first coordinate most significant).
  GroupElement element(int index) const;
  int index(const GroupElement& g) const;
  std::vector<GroupElement> elements() const;

  GroupElement zero() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, long long k) const;
  int order_of(const GroupElement& a) const;

  /// "3" for a single cyclic factor, "(1,2)" otherwise.
  std::string render(const GroupElement& g) const;

 private:
  std::vector<int> factors_;
  int order_ = 1;
  int exponent_ = 1;
};

struct ElementaryAbelian {
  int p;
  int k;
  bool operator==(const ElementaryAbelian&) const = default;
};
struct HasPrimeSquare {
  int p;
  bool operator==(const HasPrimeSquare&) const = default;
};
struct HasTwoPrimes {
  int p;
  int q;
  bool operator==(const HasTwoPrimes&) const = default;
};
using GroupClass = std::variant<ElementaryAbelian, HasPrimeSquare, HasTwoPrimes>;

GroupClass classify(const FiniteAbelianGroup& g);
std::string describe(const GroupClass& c);

/// An element of the given order, taken from the first factor divisible by it.
GroupElement element_of_order(const FiniteAbelianGroup& g, int order);

// Small number-theory helpers shared across modules.
bool is_prime(long long n);
std::vector<long long> prime_factors(long long n);  // distinct, ascending
long long gcd(long long a, long long b);
long long mod(long long a, long long m);
long long inverse_mod(long long a, long long m);  // throws when not invertible

}  // namespace hgeom
