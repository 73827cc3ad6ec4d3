#pragma once

// Dense table form of a small p-group, used for subgroup lattices, polycyclic
// generating sequences and character tables.  Local ids 0..n-1 are assigned in
// ascending canonical-encoding order of the source elements ("canonical
// S-local relabeling"); to_parent translates back to the source group's ids.

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ff/bitset.hpp"
#include "ff/group.hpp"

namespace ff {

struct PGroup {
  std::uint32_t n = 0;
  unsigned p = 0;            // 0 when not a p-group
  std::uint32_t exponent = 1;
  std::uint16_t e = 0;       // identity local id
  std::vector<std::uint16_t> mul;  // n*n
  std::vector<std::uint16_t> inv;
  std::vector<std::uint32_t> ord;
  std::vector<std::uint32_t> to_parent;
  std::vector<std::uint32_t> class_id;
  std::vector<std::uint16_t> class_reps;

  std::uint16_t times(std::uint16_t a, std::uint16_t b) const { return mul[a * n + b]; }

  std::uint16_t power(std::uint16_t a, std::uint64_t k) const {
    std::uint16_t r = e;
    std::uint64_t kk = k % ord[a];
    for (std::uint64_t i = 0; i < kk; ++i) r = times(r, a);
    return r;
  }

  std::uint16_t conj(std::uint16_t g, std::uint16_t x) const {
    return times(times(x, g), inv[x]);
  }

  bool is_abelian() const {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b)
        if (times(a, b) != times(b, a)) return false;
    return true;
  }
};

inline unsigned prime_part_of_order(std::uint32_t n) {
  if (n < 2) return 0;
  std::uint64_t p;
  unsigned k;
  if (!prime_power_decompose(n, p, k)) return 0;
  return static_cast<unsigned>(p);
}

inline PGroup pgroup_from_subgroup(const Group& g, const Subgroup& s) {
  auto ids = s.members();
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
    return elem_compare(g.payload(a), g.payload(b)) < 0;
  });
  PGroup pg;
  pg.n = static_cast<std::uint32_t>(ids.size());
  pg.to_parent = ids;
  std::vector<std::pair<std::uint32_t, std::uint16_t>> lut;
  lut.reserve(ids.size());
  for (std::uint32_t i = 0; i < pg.n; ++i) lut.emplace_back(ids[i], static_cast<std::uint16_t>(i));
  std::sort(lut.begin(), lut.end());
  auto to_local = [&](std::uint32_t gid) {
    auto it = std::lower_bound(lut.begin(), lut.end(),
                               std::make_pair(gid, static_cast<std::uint16_t>(0)));
    return it->second;
  };
  pg.mul.resize(static_cast<std::size_t>(pg.n) * pg.n);
  pg.inv.resize(pg.n);
  pg.ord.resize(pg.n);
  for (std::uint32_t a = 0; a < pg.n; ++a) {
    if (ids[a] == 0) pg.e = static_cast<std::uint16_t>(a);
    pg.inv[a] = to_local(g.inverse(ids[a]));
    pg.ord[a] = g.elem_order(ids[a]);
    pg.exponent = std::max(pg.exponent, pg.ord[a]);
    for (std::uint32_t b = 0; b < pg.n; ++b)
      pg.mul[a * pg.n + b] = to_local(g.mul(ids[a], ids[b]));
  }
  pg.p = prime_part_of_order(pg.n);
  // Conjugacy classes by full orbit partition (the group is tiny).
  pg.class_id.assign(pg.n, UINT32_MAX);
  for (std::uint32_t i = 0; i < pg.n; ++i) {
    if (pg.class_id[i] != UINT32_MAX) continue;
    std::uint32_t cid = static_cast<std::uint32_t>(pg.class_reps.size());
    pg.class_reps.push_back(static_cast<std::uint16_t>(i));
    for (std::uint32_t x = 0; x < pg.n; ++x)
      pg.class_id[pg.conj(static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(x))] = cid;
  }
  return pg;
}

inline PGroup pgroup_from_group(const Group& g) { return pgroup_from_subgroup(g, whole_subgroup(g)); }

// Closure of a set of local ids inside the table.
inline DynBitset pgroup_closure(const PGroup& s, std::vector<std::uint16_t> gens) {
  DynBitset m(s.n);
  m.set(s.e);
  std::vector<std::uint16_t> work{s.e};
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::uint16_t gen : gens) {
      std::uint16_t y = s.times(work[i], gen);
      if (!m.test(y)) {
        m.set(y);
        work.push_back(y);
      }
    }
  }
  return m;
}

inline std::vector<std::uint16_t> pgroup_subgroup_generators(const PGroup& s, const DynBitset& h) {
  std::vector<std::uint16_t> gens;
  DynBitset have(s.n);
  have.set(s.e);
  std::size_t target = h.count();
  while (have.count() < target) {
    for (std::uint32_t i = 0; i < s.n; ++i) {
      if (h.test(i) && !have.test(i)) {
        gens.push_back(static_cast<std::uint16_t>(i));
        break;
      }
    }
    have = pgroup_closure(s, gens);
  }
  return gens;
}

inline DynBitset pgroup_derived(const PGroup& s, const DynBitset& h) {
  std::vector<std::uint16_t> comms;
  auto ids = h.to_ids();
  for (std::uint32_t a : ids)
    for (std::uint32_t b : ids) {
      std::uint16_t c = s.times(s.times(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)),
                                s.times(s.inv[a], s.inv[b]));
      if (c != s.e) comms.push_back(c);
    }
  if (comms.empty()) {
    DynBitset m(s.n);
    m.set(s.e);
    return m;
  }
  return pgroup_closure(s, comms);  // normal in h automatically (derived subgroup)
}

inline DynBitset pgroup_center(const PGroup& s, const DynBitset& h) {
  DynBitset m(s.n);
  auto ids = h.to_ids();
  for (std::uint32_t a : ids) {
    bool ok = true;
    for (std::uint32_t b : ids)
      if (s.times(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)) !=
          s.times(static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(a))) {
        ok = false;
        break;
      }
    if (ok) m.set(a);
  }
  return m;
}

// Every subgroup of the p-group, by cyclic extension: subgroups of order
// p^{k+1} arise from order-p^k ones by adjoining a normalizing element.
// Sorted by (order, lexicographic member list).
inline std::vector<DynBitset> pgroup_subgroup_lattice(const PGroup& s,
                                                      std::uint32_t max_count = 5000) {
  std::vector<DynBitset> all;
  DynBitset triv(s.n);
  triv.set(s.e);
  all.push_back(triv);
  std::unordered_set<DynBitset, DynBitsetHash> seen;
  seen.insert(triv);
  std::vector<DynBitset> level{triv};
  std::uint32_t order = 1;
  while (order < s.n) {
    std::vector<DynBitset> next;
    for (const DynBitset& h : level) {
      // Normalizer of h in s.
      auto hgens = pgroup_subgroup_generators(s, h);
      for (std::uint32_t y = 0; y < s.n; ++y) {
        if (h.test(y)) continue;
        bool norms = true;
        for (std::uint16_t t : hgens)
          if (!h.test(s.conj(t, static_cast<std::uint16_t>(y)))) {
            norms = false;
            break;
          }
        if (!norms) continue;
        auto gens = hgens;
        gens.push_back(static_cast<std::uint16_t>(y));
        DynBitset q = pgroup_closure(s, gens);
        if (q.count() != static_cast<std::size_t>(order) * s.p) continue;
        if (seen.insert(q).second) {
          next.push_back(q);
          if (seen.size() > max_count)
            throw LatticeCapExceeded("subgroup lattice exceeds cap " +
                                     std::to_string(max_count));
        }
      }
    }
    for (auto& q : next) all.push_back(q);
    level = std::move(next);
    order *= s.p;
    if (level.empty() && order < s.n) break;  // only for non-p-groups; defensive
  }
  std::sort(all.begin(), all.end(), [](const DynBitset& a, const DynBitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.lex_less(b);
  });
  return all;
}

// Polycyclic generating sequence descending the derived series: a chain
// S = Q_1 > Q_2 > ... > Q_{m+1} = 1 with each step normal of index p and each
// derived-series term appearing in the chain.  Returns the chain masks
// (largest first) and the pivots t_i in Q_i \ Q_{i+1}.
struct Pcgs {
  std::vector<DynBitset> chain;       // size m+1, chain[0] = whole group
  std::vector<std::uint16_t> pivots;  // size m, pivots[i] in chain[i] \ chain[i+1]
};

inline Pcgs pgroup_pcgs(const PGroup& s, const std::vector<DynBitset>& lattice) {
  Pcgs out;
  DynBitset whole(s.n);
  for (std::uint32_t i = 0; i < s.n; ++i) whole.set(i);
  // Derived series.
  std::vector<DynBitset> derived{whole};
  for (;;) {
    DynBitset d = pgroup_derived(s, derived.back());
    if (d == derived.back()) break;  // p-groups terminate at the trivial group
    derived.push_back(d);
    if (d.count() == 1) break;
  }
  if (derived.back().count() != 1)
    throw Error("pcgs: derived series does not reach 1 (not nilpotent?)");
  out.chain.push_back(whole);
  for (std::size_t di = 1; di < derived.size(); ++di) {
    const DynBitset& target = derived[di];
    while (!(out.chain.back() == target)) {
      const DynBitset& cur = out.chain.back();
      std::size_t want = cur.count() / s.p;
      // Least maximal subgroup of cur containing target.
      const DynBitset* pick = nullptr;
      for (const DynBitset& cand : lattice) {
        if (cand.count() != want) continue;
        if (!cand.is_subset_of(cur)) continue;
        if (!target.is_subset_of(cand)) continue;
        pick = &cand;
        break;  // lattice is sorted, first hit is least
      }
      if (!pick) throw Error("pcgs: no intermediate subgroup found");
      std::uint16_t t = 0;
      for (std::uint32_t i = 0; i < s.n; ++i) {
        if (cur.test(i) && !pick->test(i)) {
          t = static_cast<std::uint16_t>(i);
          break;
        }
      }
      out.pivots.push_back(t);
      out.chain.push_back(*pick);
    }
  }
  return out;
}

// Order histogram (order -> count), an isomorphism invariant.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> pgroup_order_histogram(
    const PGroup& s, const DynBitset& h) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hist;
  auto ids = h.to_ids();
  for (std::uint32_t i : ids) {
    std::uint32_t o = s.ord[i];
    bool found = false;
    for (auto& [oo, c] : hist)
      if (oo == o) {
        ++c;
        found = true;
      }
    if (!found) hist.emplace_back(o, 1);
  }
  std::sort(hist.begin(), hist.end());
  return hist;
}

}  // namespace ff
