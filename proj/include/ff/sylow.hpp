#pragma once

// Sylow p-subgroups by normalizer climbing, and the subgroup list of a
// p-group mapped back to parent-group bit-sets.

#include <cstdint>
#include <vector>

#include "ff/group.hpp"
#include "ff/pgroup.hpp"

namespace ff {

inline unsigned vp_of_u64(std::uint64_t p, std::uint64_t m) {
  unsigned e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  return e;
}

inline bool is_p_power(std::uint64_t p, std::uint64_t m) {
  while (m % p == 0) m /= p;
  return m == 1;
}

// Deterministic Sylow p-subgroup: seed with the least element of maximal
// p-power order, then climb: while |P| is short of the p-part, adjoin the
// least p-element of N_G(P) \ P (the extension stays a p-group because P is
// normal in it).
inline Subgroup sylow_subgroup(const Group& g, unsigned p) {
  unsigned e = vp_of_u64(p, g.order());
  if (e == 0) return trivial_subgroup(g);
  std::uint64_t target = 1;
  for (unsigned i = 0; i < e; ++i) target *= p;

  std::uint32_t seed = 0;
  std::uint32_t best_ord = 1;
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    std::uint32_t o = g.elem_order(i);
    if (o > best_ord && is_p_power(p, o)) {
      best_ord = o;
      seed = i;
    }
  }
  std::vector<std::uint32_t> gens{seed};
  Subgroup P = subgroup_closure(g, gens);
  while (P.order < target) {
    Subgroup N = normalizer(g, P);
    std::uint32_t pick = UINT32_MAX;
    for (std::uint32_t y : N.members()) {
      if (P.mask.test(y)) continue;
      if (is_p_power(p, g.elem_order(y)) && g.elem_order(y) > 1) {
        pick = y;
        break;
      }
    }
    if (pick == UINT32_MAX) throw Error("sylow climb stuck (impossible)");
    gens.push_back(pick);
    P = subgroup_closure(g, gens);
  }
  return P;
}

// Every subgroup of the p-group S, each exactly once, sorted by
// (order, canonical bit-set).  S must be a p-group.
inline std::vector<Subgroup> all_subgroups(const Group& g, const Subgroup& s,
                                           std::uint32_t order_cap = 243,
                                           std::uint32_t count_cap = 5000) {
  if (s.order > order_cap)
    throw LatticeCapExceeded("|S| = " + std::to_string(s.order) + " exceeds cap " +
                             std::to_string(order_cap));
  if (s.order == 1) return {trivial_subgroup(g)};
  if (prime_part_of_order(s.order) == 0) throw InvalidSpec("all_subgroups: not a p-group");
  PGroup pg = pgroup_from_subgroup(g, s);
  auto local = pgroup_subgroup_lattice(pg, count_cap);
  std::vector<Subgroup> out;
  out.reserve(local.size());
  for (const DynBitset& m : local) {
    Subgroup sub{&g, DynBitset(g.order()), static_cast<std::uint32_t>(m.count())};
    m.for_each([&](std::uint32_t l) { sub.mask.set(pg.to_parent[l]); });
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace ff
