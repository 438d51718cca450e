#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hgeom {

inline constexpr int kMaxFieldSize = 1 << 16;

/// GF(p^m). Elements are integers 0..q-1 whose base-p digits are the
/// coefficients of a polynomial in x (digit k = coefficient of x^k), reduced
/// modulo the lexicographically smallest monic irreducible of degree m
/// (higher-degree coefficients compare first).
class PrimePowerField {
 public:
  using Elem = std::uint32_t;

  PrimePowerField(int p, int m);

  int characteristic() const { return p_; }
  int degree() const { return m_; }
  int size() const { return q_; }
  /// Coefficients of the modulus, constant term first, leading 1 included.
  const std::vector<int>& modulus() const { return modulus_; }
  std::string modulus_text() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long e) const;

  /// A generator of the multiplicative group (smallest such element).
  Elem primitive() const { return primitive_; }
  /// Multiplicative order of a nonzero element.
  long long order(Elem a) const;

  std::string to_string(Elem a) const;

 private:
  Elem slow_mul(Elem a, Elem b) const;

  int p_, m_, q_;
  std::vector<int> modulus_;
  std::vector<Elem> exp_;  // exp_[k] = g^k, doubled for index sums
  std::vector<std::int32_t> log_;
  Elem primitive_ = 1;
  std::vector<Elem> add_table_;  // populated for small fields
};

/// Least m >= 1 with p^m = 1 (mod n). Throws when gcd(p, n) != 1.
int mult_order(long long p, long long n);

}  // namespace hgeom
