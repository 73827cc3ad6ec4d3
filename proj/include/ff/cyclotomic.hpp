#pragma once

// Exact arithmetic in Z[zeta_m] for m a prime power, reduced against the
// cyclotomic polynomial Phi_m(x) = sum_{j<p} x^{j p^{k-1}}.  The canonical
// basis is 1, zeta, ..., zeta^{phi(m)-1}; equality is coefficientwise.  No
// floating point anywhere.

#include <cstdint>
#include <vector>

#include "ff/errors.hpp"
#include "ff/field.hpp"

namespace ff {

class CycInt {
 public:
  explicit CycInt(std::uint32_t m = 1) : m_(m) { init(); }

  static CycInt integer(std::uint32_t m, long long v) {
    CycInt x(m);
    x.c_[0] = v;
    return x;
  }

  // zeta_m^e
  static CycInt root_power(std::uint32_t m, long long e) {
    CycInt x(m);
    std::vector<long long> full(m, 0);
    long long r = e % static_cast<long long>(m);
    if (r < 0) r += m;
    full[static_cast<std::size_t>(r)] = 1;
    x.assign_reduced(full);
    return x;
  }

  std::uint32_t root_order() const { return m_; }
  const std::vector<long long>& coeffs() const { return c_; }

  bool is_zero() const {
    for (long long v : c_)
      if (v != 0) return false;
    return true;
  }

  bool operator==(const CycInt& o) const { return m_ == o.m_ && c_ == o.c_; }

  CycInt operator+(const CycInt& o) const {
    CycInt r(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }

  CycInt operator-(const CycInt& o) const {
    CycInt r(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }

  CycInt operator*(const CycInt& o) const {
    CycInt r(m_);
    if (m_ == 1) {
      r.c_[0] = c_[0] * o.c_[0];
      return r;
    }
    std::vector<long long> full(m_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j] == 0) continue;
        std::size_t e = i + j;
        if (e >= m_) e -= m_;  // zeta^m = 1
        full[e] += c_[i] * o.c_[j];
      }
    }
    r.assign_reduced(full);
    return r;
  }

  // Galois twist sigma_r: zeta -> zeta^r, gcd(r, m) = 1.
  CycInt galois(long long r) const {
    if (m_ == 1) return *this;
    long long rr = r % static_cast<long long>(m_);
    if (rr < 0) rr += m_;
    std::vector<long long> full(m_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      full[(i * static_cast<std::size_t>(rr)) % m_] += c_[i];
    }
    CycInt out(m_);
    out.assign_reduced(full);
    return out;
  }

  // Exact division by an integer; throws if any coefficient is not divisible.
  CycInt divide_exact(long long d) const {
    CycInt r(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] % d != 0) throw Error("cyclotomic: inexact integer division");
      r.c_[i] = c_[i] / d;
    }
    return r;
  }

 private:
  void init() {
    if (m_ == 0) throw InvalidSpec("cyclotomic order 0");
    if (m_ == 1) {
      p_ = 1;
      pk1_ = 1;
      phi_ = 1;
    } else {
      std::uint64_t p;
      unsigned k;
      if (!prime_power_decompose(m_, p, k))
        throw InvalidSpec("cyclotomic order must be a prime power");
      p_ = static_cast<std::uint32_t>(p);
      pk1_ = m_ / p_;
      phi_ = m_ - pk1_;
    }
    c_.assign(phi_, 0);
  }

  // Fold a length-m exponent vector into the phi(m)-dimensional basis using
  // x^e = -sum_j x^{(e-phi) + j p^{k-1}} for phi <= e < m.
  void assign_reduced(const std::vector<long long>& full) {
    for (std::size_t e = 0; e < phi_; ++e) c_[e] = full[e];
    for (std::size_t e = phi_; e < m_; ++e) {
      long long v = full[e];
      if (v == 0) continue;
      std::size_t base = e - phi_;
      for (std::uint32_t j = 0; j + 1 < p_; ++j) c_[base + j * pk1_] -= v;
    }
  }

  std::uint32_t m_;
  std::uint32_t p_ = 1, pk1_ = 1, phi_ = 1;
  std::vector<long long> c_;
};

}  // namespace ff
