#pragma once

// Exact character theory of small p-groups.  Irreducibles are produced by
// monomial induction (p-groups are M-groups): linear characters of each
// subgroup are induced up and deduplicated through exact inner products.
// Representation classes are multisets of irreducibles, and the §-style
// counting criteria classify Rep(P, GL_n^eps(q)), Rep(P, Sp_2n(q)) and
// Rep(P, GO_{2n+1}(q)) by twist-fixedness of the total character.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "ff/compare.hpp"
#include "ff/cyclotomic.hpp"
#include "ff/pgroup.hpp"

namespace ff {

struct Character {
  std::uint32_t degree = 0;
  std::vector<CycInt> values;  // indexed by conjugacy class of P

  bool operator==(const Character& o) const {
    return degree == o.degree && values == o.values;
  }
};

class CharacterTable {
 public:
  explicit CharacterTable(const PGroup& p, std::uint32_t order_cap = 729) : P_(&p) {
    if (p.n > order_cap) throw CapExceeded("character table: |P| exceeds cap");
    if (p.n > 1 && p.p == 0) throw InvalidSpec("character table: not a p-group");
    m_ = p.exponent;
    build_classes();
    build_irreducibles();
  }

  const PGroup& group() const { return *P_; }
  std::uint32_t exponent() const { return m_; }
  std::uint32_t num_classes() const { return static_cast<std::uint32_t>(class_reps_.size()); }
  const std::vector<std::uint16_t>& class_reps() const { return class_reps_; }
  const std::vector<std::uint32_t>& class_sizes() const { return class_sizes_; }
  const std::vector<Character>& irreducibles() const { return irr_; }

  std::uint32_t class_of(std::uint16_t g) const { return P_->class_id[g]; }

  // Class of g^r for a class representative of c.
  std::uint32_t power_class(std::uint32_t c, long long r) const {
    std::uint16_t g = class_reps_[c];
    long long rr = r % static_cast<long long>(m_);
    if (rr < 0) rr += m_;
    return P_->class_id[P_->power(g, static_cast<std::uint64_t>(rr))];
  }

  std::uint32_t inverse_class(std::uint32_t c) const {
    return P_->class_id[P_->inv[class_reps_[c]]];
  }

  // <chi, psi> = (1/|P|) sum_g chi(g) psi(g^{-1}), exact.
  CycInt inner_product_times_order(const Character& a, const Character& b) const {
    CycInt acc(m_);
    for (std::uint32_t c = 0; c < num_classes(); ++c) {
      CycInt term = a.values[c] * b.values[inverse_class(c)];
      acc = acc + term * CycInt::integer(m_, class_sizes_[c]);
    }
    return acc;
  }

  // chi(g) -> chi(g^r); permutes the irreducible list for gcd(r, exp) = 1.
  Character twist(const Character& chi, long long r) const {
    long long rr = r % static_cast<long long>(m_);
    if (rr < 0) rr += m_;
    if (m_ > 1 && std::gcd(static_cast<long long>(m_), rr) != 1)
      throw NotCoprime("twist exponent not coprime to the group exponent");
    Character out;
    out.degree = chi.degree;
    out.values.reserve(num_classes());
    for (std::uint32_t c = 0; c < num_classes(); ++c)
      out.values.push_back(chi.values[power_class(c, rr)]);
    return out;
  }

  // Index of an irreducible equal to chi; the twist of an irreducible is
  // always found.
  std::uint32_t find_irreducible(const Character& chi) const {
    for (std::uint32_t i = 0; i < irr_.size(); ++i)
      if (irr_[i] == chi) return i;
    throw Error("character is not in the irreducible list");
  }

  // The permutation that r-twisting induces on irreducibles.
  std::vector<std::uint32_t> twist_permutation(long long r) const {
    std::vector<std::uint32_t> perm(irr_.size());
    for (std::uint32_t i = 0; i < irr_.size(); ++i) perm[i] = find_irreducible(twist(irr_[i], r));
    return perm;
  }

 private:
  void build_classes() {
    const PGroup& P = *P_;
    class_reps_ = P.class_reps;
    class_sizes_.assign(class_reps_.size(), 0);
    for (std::uint32_t g = 0; g < P.n; ++g) ++class_sizes_[P.class_id[g]];
  }

  // Linear characters of the subgroup with member mask h, as exponent maps
  // val : member -> Z/m with chi = zeta^val.
  std::vector<std::vector<std::uint32_t>> linear_exponents(const DynBitset& h) const {
    const PGroup& P = *P_;
    auto gens = pgroup_subgroup_generators(P, h);
    auto members = h.to_ids();
    std::vector<std::vector<std::uint32_t>> out;
    if (gens.empty()) {
      out.push_back(std::vector<std::uint32_t>(P.n, 0));
      return out;
    }
    std::vector<std::uint32_t> choice(gens.size(), 0);
    for (;;) {
      // Propagate val over the subgroup, rejecting inconsistencies.
      std::vector<std::uint32_t> val(P.n, UINT32_MAX);
      val[P.e] = 0;
      std::vector<std::uint16_t> work{P.e};
      bool ok = true;
      for (std::size_t w = 0; w < work.size() && ok; ++w) {
        for (std::size_t gi = 0; gi < gens.size() && ok; ++gi) {
          std::uint16_t y = P.times(work[w], gens[gi]);
          std::uint32_t v = (val[work[w]] + choice[gi] * (m_ / P.ord[gens[gi]])) % m_;
          if (val[y] == UINT32_MAX) {
            val[y] = v;
            work.push_back(y);
          } else if (val[y] != v) {
            ok = false;
          }
        }
      }
      if (ok) out.push_back(std::move(val));
      // Next exponent choice.
      std::size_t i = 0;
      while (i < gens.size()) {
        if (++choice[i] < P.ord[gens[i]]) break;
        choice[i] = 0;
        ++i;
      }
      if (i == gens.size()) break;
    }
    return out;
  }

  void build_irreducibles() {
    const PGroup& P = *P_;
    auto lattice = pgroup_subgroup_lattice(P);
    std::uint64_t degsq = 0;
    // Largest subgroups first: linear characters of P itself come first and
    // low-index subgroups give the low-degree induced characters.
    std::sort(lattice.begin(), lattice.end(), [](const DynBitset& a, const DynBitset& b) {
      if (a.count() != b.count()) return a.count() > b.count();
      return a.lex_less(b);
    });
    for (const DynBitset& h : lattice) {
      if (degsq == P.n) break;
      std::uint32_t hsize = static_cast<std::uint32_t>(h.count());
      std::uint32_t deg = P.n / hsize;
      // Left coset representatives of h, by least member.
      std::vector<std::uint16_t> reps;
      {
        std::vector<bool> covered(P.n, false);
        for (std::uint32_t x = 0; x < P.n; ++x) {
          if (covered[x]) continue;
          reps.push_back(static_cast<std::uint16_t>(x));
          h.for_each([&](std::uint32_t hh) {
            covered[P.times(static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(hh))] = true;
          });
        }
      }
      for (const auto& val : linear_exponents(h)) {
        Character chi;
        chi.degree = deg;
        chi.values.reserve(num_classes());
        for (std::uint32_t c = 0; c < num_classes(); ++c) {
          CycInt acc(m_);
          std::uint16_t g = class_reps_[c];
          for (std::uint16_t x : reps) {
            std::uint16_t t = P.times(P.times(P.inv[x], g), x);
            if (h.test(t)) acc = acc + CycInt::root_power(m_, val[t]);
          }
          chi.values.push_back(acc);
        }
        if (!(inner_product_times_order(chi, chi) == CycInt::integer(m_, P.n))) continue;
        bool dup = false;
        for (const Character& known : irr_)
          if (known == chi) {
            dup = true;
            break;
          }
        if (!dup) {
          degsq += static_cast<std::uint64_t>(deg) * deg;
          irr_.push_back(std::move(chi));
        }
        if (degsq == P.n) break;
      }
    }
    if (degsq != P.n) throw Error("character table incomplete (sum of squares mismatch)");
    std::sort(irr_.begin(), irr_.end(), [](const Character& a, const Character& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      for (std::size_t c = 0; c < a.values.size(); ++c) {
        if (a.values[c] == b.values[c]) continue;
        return a.values[c].coeffs() < b.values[c].coeffs();
      }
      return false;
    });
  }

  const PGroup* P_;
  std::uint32_t m_ = 1;
  std::vector<std::uint16_t> class_reps_;
  std::vector<std::uint32_t> class_sizes_;
  std::vector<Character> irr_;
};

inline std::vector<Character> irreducible_characters(const PGroup& p) {
  return CharacterTable(p).irreducibles();
}

// A representation class: multiset of irreducible indices, stored sorted.
using RepClass = std::vector<std::uint32_t>;

inline std::uint32_t rep_class_dimension(const CharacterTable& t, const RepClass& c) {
  std::uint32_t d = 0;
  for (std::uint32_t i : c) d += t.irreducibles()[i].degree;
  return d;
}

// All multisets of irreducibles with total dimension n.
inline std::vector<RepClass> rep_n_classes(const CharacterTable& t, std::uint32_t n,
                                           std::uint32_t dim_cap = 12) {
  if (n > dim_cap) throw CapExceeded("rep_n_classes: dimension exceeds cap");
  std::vector<RepClass> out;
  RepClass cur;
  auto rec = [&](auto&& self, std::uint32_t remaining, std::uint32_t min_idx) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = min_idx; i < t.irreducibles().size(); ++i) {
      std::uint32_t d = t.irreducibles()[i].degree;
      if (d > remaining) continue;
      cur.push_back(i);
      self(self, remaining - d, i);
      cur.pop_back();
    }
  };
  rec(rec, n, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline bool multiset_fixed(const RepClass& c, const std::vector<std::uint32_t>& perm) {
  RepClass img;
  img.reserve(c.size());
  for (std::uint32_t i : c) img.push_back(perm[i]);
  std::sort(img.begin(), img.end());
  return img == c;
}

}  // namespace detail

// Rep(P, GL_n^eps(q)): classes V of dimension n with chi_V(g^{eps q}) =
// chi_V(g) for all g, i.e. multisets fixed by the (eps q)-twist.
inline std::pair<std::uint32_t, std::vector<RepClass>> count_rep_gl(const CharacterTable& t,
                                                                    std::uint32_t n,
                                                                    std::uint64_t q, int eps) {
  const PGroup& P = t.group();
  if (P.p != 0 && q % P.p == 0) throw NotCoprime("q must be prime to p");
  long long r = static_cast<long long>(q % t.exponent()) * (eps >= 0 ? 1 : -1);
  auto perm = t.twist_permutation(r);
  std::vector<RepClass> fixed;
  for (const RepClass& c : rep_n_classes(t, n))
    if (detail::multiset_fixed(c, perm)) fixed.push_back(c);
  return {static_cast<std::uint32_t>(fixed.size()), fixed};
}

// Rep(P, Sp_m(q)) for even m / Rep(P, GO_m(q)) for odd m, odd p, odd q:
// classes fixed by both the q-twist and the (-1)-twist.
inline std::pair<std::uint32_t, std::vector<RepClass>> count_rep_symplectic_orthogonal(
    const CharacterTable& t, std::uint32_t m, std::uint64_t q) {
  const PGroup& P = t.group();
  if (P.p == 2) throw OddPrimeRequired("the Sp/GO criterion requires odd p");
  if (q % 2 == 0) throw InvalidSpec("the Sp/GO criterion requires odd q");
  if (P.p != 0 && q % P.p == 0) throw NotCoprime("q must be prime to p");
  auto perm_q = t.twist_permutation(static_cast<long long>(q % t.exponent()));
  auto perm_inv = t.twist_permutation(-1);
  std::vector<RepClass> fixed;
  for (const RepClass& c : rep_n_classes(t, m))
    if (detail::multiset_fixed(c, perm_q) && detail::multiset_fixed(c, perm_inv))
      fixed.push_back(c);
  return {static_cast<std::uint32_t>(fixed.size()), fixed};
}

// Cross-check of the counting criteria against direct enumeration.
enum class RepCounter { GlPlus, GlMinus, SpGo };

struct CrosscheckResult {
  std::uint32_t direct = 0;
  std::uint32_t by_characters = 0;
  bool equal = false;
};

inline CrosscheckResult naturality_crosscheck(const PGroup& p, const Group& g,
                                              RepCounter counter, std::uint32_t n,
                                              std::uint64_t q, RepSetCaps caps = {}) {
  CharacterTable t(p);
  CrosscheckResult r;
  switch (counter) {
    case RepCounter::GlPlus:
      r.by_characters = count_rep_gl(t, n, q, +1).first;
      break;
    case RepCounter::GlMinus:
      r.by_characters = count_rep_gl(t, n, q, -1).first;
      break;
    case RepCounter::SpGo:
      r.by_characters = count_rep_symplectic_orthogonal(t, n, q).first;
      break;
  }
  r.direct = rep_set(p, g, caps).count();
  r.equal = r.direct == r.by_characters;
  return r;
}

}  // namespace ff
