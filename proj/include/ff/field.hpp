#pragma once

// Exact arithmetic in GF(p0^k), q <= 2^16.  Elements are encoded as integers
// 0..q-1 whose base-p0 digits are the coefficients of the representing
// polynomial (digit i = coefficient of x^i).  Multiplication goes through
// discrete log tables; addition is digitwise mod p0.

#include <cstdint>
#include <numeric>
#include <vector>

#include "ff/errors.hpp"

namespace ff {

using felt = std::uint32_t;  // field element id, < q

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Writes n = p^k with p prime, k >= 1; returns false if n is not a prime power.
inline bool prime_power_decompose(std::uint64_t n, std::uint64_t& p, unsigned& k) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      k = 0;
      while (n % d == 0) {
        n /= d;
        ++k;
      }
      return n == 1;
    }
  }
  p = n;
  k = 1;
  return true;
}

class FieldSpec {
 public:
  // Lexicographically least irreducible monic modulus: candidates are scanned
  // in increasing order of the integer whose base-p0 digits are the
  // non-leading coefficients (constant term = least significant digit).
  FieldSpec(std::uint32_t p0, std::uint32_t k) : p0_(p0), k_(k) {
    if (!is_prime_u64(p0)) throw CompositeCharacteristic(p0);
    if (k < 1) throw DegreeOverflow("field degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p0;
      if (q > (1u << 16)) throw DegreeOverflow("field cardinality exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_.assign(k + 1, 0);
    modulus_[k] = 1;
    if (k == 1) {
      modulus_[0] = 0;  // x, unused: prime field needs no modulus
    } else {
      bool found = false;
      for (std::uint32_t low = 0; low < q_ && !found; ++low) {
        std::vector<std::uint32_t> cand(k + 1, 0);
        std::uint32_t rest = low;
        for (std::uint32_t i = 0; i < k; ++i) {
          cand[i] = rest % p0;
          rest /= p0;
        }
        cand[k] = 1;
        if (poly_irreducible(cand)) {
          modulus_ = cand;
          found = true;
        }
      }
      if (!found) throw Error("no irreducible modulus found");  // unreachable
    }
    build_tables();
  }

  std::uint32_t characteristic() const { return p0_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  felt generator() const { return gen_; }

  felt add(felt a, felt b) const {
    if (!add8_.empty()) return add8_[a * q_ + b];
    return add_slow(a, b);
  }

  felt neg(felt a) const {
    if (k_ == 1) return a == 0 ? 0 : q_ - a;
    felt r = 0, pw = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t da = (a / pw) % p0_;
      r += (da == 0 ? 0 : p0_ - da) * pw;
      pw *= p0_;
    }
    return r;
  }

  felt sub(felt a, felt b) const { return add(a, neg(b)); }

  felt mul(felt a, felt b) const {
    if (!mul8_.empty()) return mul8_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  felt inv(felt a) const {
    if (a == 0) throw ZeroArgument("field inverse of zero");
    std::uint32_t e = log_[a];
    return exp_[e == 0 ? 0 : q_ - 1 - e];
  }

  felt pow(felt a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t r = (static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[r];
  }

  // x -> x^p0
  felt frobenius(felt a) const { return pow(a, p0_); }

  // Multiplicative order; 0 has no order.
  std::uint32_t mult_order(felt a) const {
    if (a == 0) throw ZeroArgument("order of zero");
    std::uint32_t n = q_ - 1;
    return n / std::gcd(n, log_[a]);  // log(1) = 0, gcd(n,0) = n
  }

  bool is_square(felt a) const {
    if (a == 0) return true;
    if (p0_ == 2) return true;  // Frobenius is onto squares in char 2
    return log_[a] % 2 == 0;
  }

  bool operator==(const FieldSpec& o) const {
    return p0_ == o.p0_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

 private:
  // Plain polynomial arithmetic over Z/p0 for modulus selection.
  using Poly = std::vector<std::uint32_t>;

  static void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  Poly poly_mod(Poly a, const Poly& m) const {
    poly_trim(a);
    while (a.size() >= m.size()) {
      std::uint32_t c = a.back();  // m monic
      std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::uint64_t t = static_cast<std::uint64_t>(c) * m[i] % p0_;
        a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p0_ - t) % p0_);
      }
      poly_trim(a);
    }
    return a;
  }

  Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p0_);
    return poly_mod(std::move(prod), m);
  }

  // Trial division by every monic polynomial of degree <= deg(f)/2.
  bool poly_irreducible(const Poly& f) const {
    std::uint32_t deg = static_cast<std::uint32_t>(f.size()) - 1;
    if (f[0] == 0) return false;  // divisible by x
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p0_;
      for (std::uint64_t low = 0; low < count; ++low) {
        Poly g(d + 1, 0);
        std::uint64_t rest = low;
        for (std::uint32_t i = 0; i < d; ++i) {
          g[i] = static_cast<std::uint32_t>(rest % p0_);
          rest /= p0_;
        }
        g[d] = 1;
        Poly r = poly_mod(f, g);
        if (r.empty()) return false;
      }
    }
    return true;
  }

  felt poly_to_id(const Poly& f) const {
    felt r = 0, pw = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      r += f[i] * pw;
      pw *= p0_;
    }
    return r;
  }

  void build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    // Find a multiplicative generator by direct order test, least id first.
    std::vector<std::uint32_t> divisors;
    std::uint32_t n = q_ - 1;
    for (std::uint32_t d = 1; d < n; ++d)
      if (n % d == 0) divisors.push_back(d);
    for (felt g = 1; g < q_; ++g) {
      if (n == 1) {  // F_2
        gen_ = 1;
        break;
      }
      bool ok = true;
      for (std::uint32_t d : divisors) {
        if (d == 0 || d == n) continue;
        if (raw_pow(g, d) == 1) {
          ok = false;
          break;
        }
      }
      if (ok && raw_pow(g, n) == 1 && g != 1) {
        gen_ = g;
        break;
      }
      if (n == 1) break;
    }
    felt x = 1;
    for (std::uint32_t e = 0; e < n; ++e) {
      exp_[e] = x;
      log_[x] = e;
      x = raw_mul(x, gen_);
    }
    // Dense add/mul tables for small fields (the hot path for matrix work).
    if (q_ <= 256) {
      add8_.resize(static_cast<std::size_t>(q_) * q_);
      mul8_.resize(static_cast<std::size_t>(q_) * q_);
      for (felt a = 0; a < q_; ++a)
        for (felt b = 0; b < q_; ++b) {
          add8_[a * q_ + b] = static_cast<std::uint8_t>(add_slow(a, b));
          mul8_[a * q_ + b] = static_cast<std::uint8_t>(raw_mul(a, b));
        }
    }
  }

  felt add_slow(felt a, felt b) const {
    if (k_ == 1) {
      std::uint32_t s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    felt r = 0, pw = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t da = (a / pw) % p0_, db = (b / pw) % p0_;
      std::uint32_t d = da + db;
      if (d >= p0_) d -= p0_;
      r += d * pw;
      pw *= p0_;
    }
    return r;
  }

  // Table-free multiply, used only while bootstrapping the tables.
  felt raw_mul(felt a, felt b) const {
    if (k_ == 1) return static_cast<felt>(static_cast<std::uint64_t>(a) * b % p0_);
    Poly fa, fb;
    for (felt t = a; t; t /= p0_) fa.push_back(t % p0_);
    for (felt t = b; t; t /= p0_) fb.push_back(t % p0_);
    return poly_to_id(poly_mulmod(fa, fb, modulus_));
  }

  felt raw_pow(felt a, std::uint64_t e) const {
    felt r = 1;
    while (e) {
      if (e & 1) r = raw_mul(r, a);
      a = raw_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint32_t p0_, k_, q_;
  Poly modulus_;
  felt gen_ = 1;
  std::vector<felt> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint8_t> add8_, mul8_;
};

// build_field(p0, k): verified-irreducible modulus, arithmetic ops available.
inline FieldSpec build_field(std::uint32_t p0, std::uint32_t k) { return FieldSpec(p0, k); }

// Field of cardinality q = p0^k.
inline FieldSpec field_of_order(std::uint64_t q) {
  std::uint64_t p;
  unsigned k;
  if (!prime_power_decompose(q, p, k)) throw InvalidSpec("not a prime power: " + std::to_string(q));
  return FieldSpec(static_cast<std::uint32_t>(p), k);
}

}  // namespace ff
