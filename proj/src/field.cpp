#include "hgeom/field.hpp"

#include <stdexcept>

#include "hgeom/group.hpp"

namespace hgeom {

namespace {

using Poly = std::vector<int>;  // constant term first

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, int p) {
  a = trim(std::move(a));
  const auto db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const auto shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) {
      a[shift + k] = static_cast<int>(mod(a[shift + k] - static_cast<long long>(lead) * b[k], p));
    }
    a = trim(std::move(a));
  }
  return a;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits of c.
Poly monic_from_index(long long c, int d, int p) {
  Poly f(d + 1, 0);
  for (int k = 0; k < d; ++k) {
    f[k] = static_cast<int>(c % p);
    c /= p;
  }
  f[d] = 1;
  return f;
}

bool irreducible(const Poly& f, int p) {
  const int m = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= m; ++d) {
    long long count = 1;
    for (int k = 0; k < d; ++k) count *= p;
    for (long long c = 0; c < count; ++c) {
      if (poly_mod(f, monic_from_index(c, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

int mult_order(long long p, long long n) {
  if (n < 2) throw std::invalid_argument("multiplicative order needs n >= 2");
  if (gcd(p, n) != 1) {
    throw std::invalid_argument("gcd(" + std::to_string(p) + ", " + std::to_string(n) + ") != 1");
  }
  long long v = mod(p, n);
  int m = 1;
  while (v != 1) {
    v = mod(v * p, n);
    ++m;
  }
  return m;
}

PrimePowerField::PrimePowerField(int p, int m) : p_(p), m_(m), q_(1) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (m < 1) throw std::invalid_argument("field degree must be >= 1");
  for (int k = 0; k < m; ++k) {
    if (static_cast<long long>(q_) * p > kMaxFieldSize) {
      throw std::invalid_argument("GF(" + std::to_string(p) + "^" + std::to_string(m) +
                                  ") exceeds the supported size " + std::to_string(kMaxFieldSize));
    }
    q_ *= p;
  }
  if (m == 1) {
    modulus_ = {0, 1};
  } else {
    for (long long c = 0; c < q_; ++c) {
      auto f = monic_from_index(c, m, p);
      // Search order: higher-degree coefficients most significant.
      if (irreducible(f, p)) {
        modulus_ = std::move(f);
        break;
      }
    }
  }

  if (q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) {
        Elem r = 0, scale = 1;
        int x = a, y = b;
        for (int k = 0; k < m_; ++k) {
          r += static_cast<Elem>(((x % p_) + (y % p_)) % p_) * scale;
          x /= p_;
          y /= p_;
          scale *= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = r;
      }
    }
  }

  const long long group_order = q_ - 1;
  const auto primes = prime_factors(group_order);
  auto slow_pow = [&](Elem a, long long e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  for (Elem g = 1; g < static_cast<Elem>(q_); ++g) {
    bool generator = true;
    for (auto r : primes) {
      if (slow_pow(g, group_order / r) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      primitive_ = g;
      break;
    }
  }
  exp_.resize(2 * static_cast<std::size_t>(q_));
  log_.assign(q_, -1);
  Elem v = 1;
  for (long long k = 0; k < group_order; ++k) {
    exp_[k] = v;
    exp_[k + group_order] = v;
    log_[v] = static_cast<std::int32_t>(k);
    v = slow_mul(v, primitive_);
  }
}

PrimePowerField::Elem PrimePowerField::slow_mul(Elem a, Elem b) const {
  Poly pa(m_, 0), pb(m_, 0);
  for (int k = 0; k < m_; ++k) {
    pa[k] = static_cast<int>(a % p_);
    a /= p_;
    pb[k] = static_cast<int>(b % p_);
    b /= p_;
  }
  Poly prod(2 * m_, 0);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
  }
  auto r = poly_mod(std::move(prod), modulus_, p_);
  Elem out = 0;
  for (auto k = r.size(); k-- > 0;) out = out * p_ + r[k];
  return out;
}

PrimePowerField::Elem PrimePowerField::from_int(long long v) const {
  return static_cast<Elem>(mod(v, p_));
}

PrimePowerField::Elem PrimePowerField::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  if (p_ == 2) return a ^ b;
  Elem r = 0, scale = 1;
  for (int k = 0; k < m_; ++k) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

PrimePowerField::Elem PrimePowerField::neg(Elem a) const {
  Elem r = 0, scale = 1;
  for (int k = 0; k < m_; ++k) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

PrimePowerField::Elem PrimePowerField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

PrimePowerField::Elem PrimePowerField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

PrimePowerField::Elem PrimePowerField::pow(Elem a, long long e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  const long long k = mod(static_cast<long long>(log_[a]) * mod(e, q_ - 1), q_ - 1);
  return exp_[k];
}

long long PrimePowerField::order(Elem a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative order");
  const long long n = q_ - 1;
  return n / gcd(log_[a], n);
}

std::string PrimePowerField::to_string(Elem a) const {
  if (m_ == 1) return std::to_string(a);
  std::string out;
  for (int k = m_ - 1; k >= 0; --k) {
    Elem scale = 1;
    for (int i = 0; i < k; ++i) scale *= p_;
    const auto c = (a / scale) % p_;
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

std::string PrimePowerField::modulus_text() const {
  std::string out;
  for (auto k = modulus_.size(); k-- > 0;) {
    const int c = modulus_[k];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace hgeom
