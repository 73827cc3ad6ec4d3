#pragma once

// Closed subgroups of Z_p^x generated by integer units, classified by a
// finite descriptor, plus the literal truncation oracle that decides equality
// mod p^k for increasing k.
//
// Odd p: Z_p^x = (torsion T <= F_p^x) x (1 + pZ_p), and a closed subgroup is
// T' x (1 + p^c Z_p); the descriptor stores |T'| (subgroups of the cyclic
// F_p^x are unique per order) and the depth c, with c computed as the minimum
// of v_p(g^{s_g} - 1) over the generators (s_g = order of g mod p).
//
// p = 2: Z_2^x = {+-1} x (1 + 4Z_2).  Closed subgroups are products
// {+-1}^d x (1 + 2^c Z_2) or "diagonal" subgroups generated by -u with u of
// level c.  These are separated by (image in (Z/8)^x, kernel depth c,
// whether -1 itself lies in the closure), all computable from generators.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ff/errors.hpp"
#include "ff/field.hpp"

namespace ff {

inline constexpr std::uint32_t kInfiniteDepth = UINT32_MAX;

// Largest e with p^e | m.
inline std::uint32_t vp(std::uint64_t p, long long m) {
  if (m == 0) throw ZeroArgument("vp of zero");
  unsigned long long a = m < 0 ? static_cast<unsigned long long>(-(m + 1)) + 1ull
                               : static_cast<unsigned long long>(m);
  std::uint32_t e = 0;
  while (a % p == 0) {
    a /= p;
    ++e;
  }
  return e;
}

inline std::uint64_t reduce_mod(long long g, std::uint64_t m) {
  long long r = g % static_cast<long long>(m);
  if (r < 0) r += static_cast<long long>(m);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

// Least s >= 1 with u^s = 1 (mod m).
inline std::uint32_t mult_order(long long u, std::uint64_t m) {
  if (m < 2) throw InvalidSpec("modulus must be >= 2");
  std::uint64_t r = reduce_mod(u, m);
  if (gcd_u64(r, m) != 1)
    throw NotCoprime(std::to_string(u) + " is not a unit mod " + std::to_string(m));
  std::uint64_t x = r;
  std::uint32_t s = 1;
  while (x != 1) {
    x = mulmod_u64(x, r, m);
    ++s;
  }
  return s;
}

namespace detail {

// v_p(g^s - 1) computed exactly in __int128, with kInfiniteDepth for g^s == 1.
inline std::uint32_t power_depth(std::uint64_t p, long long g, std::uint32_t s) {
  __int128 pw = 1;
  const __int128 limit = static_cast<__int128>(1) << 120;
  for (std::uint32_t i = 0; i < s; ++i) {
    pw *= g;
    if (pw > limit || -pw > limit) throw CapExceeded("padic: generator power overflows");
  }
  __int128 d = pw - 1;
  if (d == 0) return kInfiniteDepth;
  if (d < 0) d = -d;
  std::uint32_t e = 0;
  while (d % p == 0) {
    d /= p;
    ++e;
  }
  return e;
}

}  // namespace detail

struct PadicClosureDescriptor {
  std::uint64_t p = 0;
  // Odd p.
  std::uint32_t torsion_order = 1;      // s = |image in F_p^x|
  std::uint32_t torsion_generator = 1;  // least residue generating the image
  std::uint32_t depth = kInfiniteDepth; // c, kInfiniteDepth when pure torsion
  // p = 2.
  std::vector<std::uint32_t> image_mod8{1};
  bool has_minus_one = false;

  bool operator==(const PadicClosureDescriptor& o) const {
    if (p != o.p) return false;
    if (p == 2) return image_mod8 == o.image_mod8 && depth == o.depth &&
                       has_minus_one == o.has_minus_one;
    return torsion_order == o.torsion_order && depth == o.depth;
  }
};

inline PadicClosureDescriptor closure_descriptor(std::uint64_t p,
                                                 const std::vector<long long>& gens) {
  if (!is_prime_u64(p)) throw InvalidSpec("p must be prime");
  for (long long g : gens)
    if (g == 0 || reduce_mod(g, p) == 0)
      throw NotCoprime("generator " + std::to_string(g) + " not coprime to p");
  PadicClosureDescriptor d;
  d.p = p;
  if (p != 2) {
    // Torsion image in F_p^x.
    std::unordered_set<std::uint64_t> t{1};
    std::vector<std::uint64_t> work{1};
    for (long long g : gens) {
      std::uint64_t r = reduce_mod(g, p);
      for (std::size_t i = 0; i < work.size(); ++i) {
        std::uint64_t y = mulmod_u64(work[i], r, p);
        if (t.insert(y).second) work.push_back(y);
      }
    }
    d.torsion_order = static_cast<std::uint32_t>(t.size());
    d.torsion_generator = 1;
    for (std::uint64_t x = 1; x < p; ++x) {
      if (t.count(x) && mult_order(static_cast<long long>(x), p) == d.torsion_order) {
        d.torsion_generator = static_cast<std::uint32_t>(x);
        break;
      }
    }
    d.depth = kInfiniteDepth;
    for (long long g : gens) {
      std::uint32_t s = mult_order(g, p);
      std::uint32_t lvl = detail::power_depth(p, g, s);
      d.depth = std::min(d.depth, lvl);
    }
    return d;
  }
  // p = 2.
  std::unordered_set<std::uint64_t> img{1};
  std::vector<std::uint64_t> work{1};
  for (long long g : gens) {
    std::uint64_t r = reduce_mod(g, 8);
    for (std::size_t i = 0; i < work.size(); ++i) {
      std::uint64_t y = mulmod_u64(work[i], r, 8);
      if (img.insert(y).second) work.push_back(y);
    }
  }
  d.image_mod8.assign(img.begin(), img.end());
  std::sort(d.image_mod8.begin(), d.image_mod8.end());
  // Kernel depth: generators of the subgroup of sign-trivial words.
  std::vector<long long> neg, pos;
  for (long long g : gens) (reduce_mod(g, 4) == 3 ? neg : pos).push_back(g);
  std::uint32_t c = kInfiniteDepth;
  auto level1 = [&](long long x) {  // v_2(x - 1), infinity at x == 1
    if (x == 1) return kInfiniteDepth;
    return vp(2, x - 1);
  };
  for (long long g : pos) c = std::min(c, level1(g));
  for (long long g : neg) c = std::min(c, detail::power_depth(2, g, 2));
  for (std::size_t i = 0; i < neg.size(); ++i)
    for (std::size_t j = i + 1; j < neg.size(); ++j) {
      __int128 prod = static_cast<__int128>(neg[i]) * neg[j];
      __int128 diff = prod - 1;
      if (diff == 0) continue;
      if (diff < 0) diff = -diff;
      std::uint32_t e = 0;
      while (diff % 2 == 0) {
        diff /= 2;
        ++e;
      }
      c = std::min(c, e);
    }
  d.depth = c;
  // Diagonal level: min v_2(g + 1) over sign-negative generators.
  std::uint32_t dmin = kInfiniteDepth;
  for (long long g : neg) {
    if (g == -1) continue;  // contributes no diagonal level (pure torsion)
    dmin = std::min(dmin, vp(2, g + 1));
  }
  d.has_minus_one = !neg.empty() && dmin >= c;
  return d;
}

// Literal comparison of the subgroups of (Z/p^k)^x generated by the residues,
// for every k <= kmax.
inline bool truncation_oracle(std::uint64_t p, const std::vector<long long>& gens1,
                              const std::vector<long long>& gens2, std::uint32_t kmax) {
  if (!is_prime_u64(p)) throw InvalidSpec("p must be prime");
  if (kmax < 1) throw InvalidSpec("kmax must be >= 1");
  auto subgroup_mod = [&](const std::vector<long long>& gens, std::uint64_t m) {
    std::unordered_set<std::uint64_t> s{1};
    std::vector<std::uint64_t> work{1};
    for (long long g : gens) {
      std::uint64_t r = reduce_mod(g, m);
      if (gcd_u64(r, m) != 1)
        throw NotCoprime("generator " + std::to_string(g) + " not coprime to p");
      for (std::size_t i = 0; i < work.size(); ++i) {
        std::uint64_t y = mulmod_u64(work[i], r, m);
        if (s.insert(y).second) work.push_back(y);
      }
    }
    return s;
  };
  std::uint64_t m = 1;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    if (m > (1ull << 62) / p) throw CapExceeded("truncation oracle modulus overflow");
    m *= p;
    if (subgroup_mod(gens1, m) != subgroup_mod(gens2, m)) return false;
  }
  return true;
}

// Comparison level that separates all descriptor cases: max finite depth + 2.
inline std::uint32_t suggested_oracle_k(const PadicClosureDescriptor& a,
                                        const PadicClosureDescriptor& b) {
  std::uint32_t k = 1;
  if (a.depth != kInfiniteDepth) k = std::max(k, a.depth);
  if (b.depth != kInfiniteDepth) k = std::max(k, b.depth);
  k += 2;
  if (a.p == 2) k = std::max(k, 4u);
  return k;
}

inline bool closure_equal(std::uint64_t p, const std::vector<long long>& gens1,
                          const std::vector<long long>& gens2) {
  return closure_descriptor(p, gens1) == closure_descriptor(p, gens2);
}

// Closed form cross-checked against the truncation oracle; a disagreement is
// a release-blocking bug, so it throws.
inline bool closure_equal_checked(std::uint64_t p, const std::vector<long long>& gens1,
                                  const std::vector<long long>& gens2) {
  PadicClosureDescriptor d1 = closure_descriptor(p, gens1);
  PadicClosureDescriptor d2 = closure_descriptor(p, gens2);
  bool closed = d1 == d2;
  bool oracle = truncation_oracle(p, gens1, gens2, suggested_oracle_k(d1, d2));
  if (closed != oracle)
    throw Error("padic closed form disagrees with truncation oracle (p=" + std::to_string(p) +
                ")");
  return closed;
}

enum class TheoremAVariant { A, C, D };

// Hypothesis dispatch: (a) <q> = <q'>, (c) <-1,q> = <-1,q'>, (d) <-q> = <q'>.
inline bool theorem_a_hypothesis(TheoremAVariant v, std::uint64_t p, std::uint64_t q,
                                 std::uint64_t q2, bool oracle_checked = true) {
  long long qq = static_cast<long long>(q);
  long long qq2 = static_cast<long long>(q2);
  std::vector<long long> g1, g2;
  switch (v) {
    case TheoremAVariant::A:
      g1 = {qq};
      g2 = {qq2};
      break;
    case TheoremAVariant::C:
      g1 = {-1, qq};
      g2 = {-1, qq2};
      break;
    case TheoremAVariant::D:
      g1 = {-qq};
      g2 = {qq2};
      break;
  }
  return oracle_checked ? closure_equal_checked(p, g1, g2) : closure_equal(p, g1, g2);
}

}  // namespace ff
