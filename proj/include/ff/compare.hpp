#pragma once

// Deciding isotypical equivalence: invariant fingerprints, backtracking
// search for a fusion-preserving isomorphism S_1 -> S_2 over a polycyclic
// generating sequence, Rep(P,G) up to conjugacy, the full-subcategory
// criterion, and transport of central subgroups.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ff/fusion.hpp"
#include "ff/group.hpp"
#include "ff/pgroup.hpp"

namespace ff {

inline constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;

// ---------------------------------------------------------------------------
// Fingerprints.  Every entry is derived from the category structure and from
// subgroup isomorphism invariants only, so fusion-preserving isomorphisms
// leave the fingerprint unchanged.

struct SubgroupSignature {
  std::uint32_t order;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order_hist;
  std::uint32_t center_order;
  std::uint32_t derived_order;
  std::uint32_t aut_f;        // |Aut_F(P)|
  std::uint32_t f_class;      // number of F-conjugates of P
  std::uint32_t hom_to_s;     // |Hom_F(P,S)|

  auto key() const {
    return std::tie(order, order_hist, center_order, derived_order, aut_f, f_class, hom_to_s);
  }
  bool operator==(const SubgroupSignature& o) const { return key() == o.key(); }
  bool operator<(const SubgroupSignature& o) const { return key() < o.key(); }
};

struct FusionFingerprint {
  std::uint32_t sylow_order = 1;
  std::uint32_t sylow_exponent = 1;
  std::uint32_t focal_order = 1;
  std::vector<SubgroupSignature> entries;  // sorted multiset

  bool operator==(const FusionFingerprint& o) const = default;

  // Names the first distinguishing invariant, in a fixed documented order:
  // sylow order, sylow exponent, focal order, then the sorted signature list.
  std::string first_difference(const FusionFingerprint& o) const {
    if (sylow_order != o.sylow_order)
      return "sylow order " + std::to_string(sylow_order) + " vs " + std::to_string(o.sylow_order);
    if (sylow_exponent != o.sylow_exponent)
      return "sylow exponent " + std::to_string(sylow_exponent) + " vs " +
             std::to_string(o.sylow_exponent);
    if (focal_order != o.focal_order)
      return "focal subgroup order " + std::to_string(focal_order) + " vs " +
             std::to_string(o.focal_order);
    if (entries.size() != o.entries.size())
      return "subgroup count " + std::to_string(entries.size()) + " vs " +
             std::to_string(o.entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i] == o.entries[i]) continue;
      const auto& a = entries[i];
      const auto& b = o.entries[i];
      std::ostringstream os;
      os << "subgroup signature #" << i << " differs: (order " << a.order << ", |Z| "
         << a.center_order << ", |P'| " << a.derived_order << ", |Aut_F| " << a.aut_f
         << ", F-class " << a.f_class << ", |Hom(P,S)| " << a.hom_to_s << ") vs (order "
         << b.order << ", |Z| " << b.center_order << ", |P'| " << b.derived_order << ", |Aut_F| "
         << b.aut_f << ", F-class " << b.f_class << ", |Hom(P,S)| " << b.hom_to_s << ")";
      return os.str();
    }
    return "";
  }
};

inline FusionFingerprint fingerprint(const FusionSystem& f) {
  FusionFingerprint fp;
  const PGroup& s = f.s_table();
  fp.sylow_order = s.n;
  fp.sylow_exponent = s.exponent;
  fp.focal_order = focal_subgroup(f).order;
  for (std::uint32_t i = 0; i < f.num_subgroups(); ++i) {
    SubgroupSignature sig;
    const DynBitset& mask = f.subgroup_mask(i);
    sig.order = static_cast<std::uint32_t>(mask.count());
    sig.order_hist = pgroup_order_histogram(s, mask);
    sig.center_order = static_cast<std::uint32_t>(pgroup_center(s, mask).count());
    sig.derived_order = static_cast<std::uint32_t>(pgroup_derived(s, mask).count());
    sig.aut_f = f.aut_count(i);
    sig.f_class = f.f_class_size(i);
    sig.hom_to_s = static_cast<std::uint32_t>(f.maps_from(i).size());
    fp.entries.push_back(std::move(sig));
  }
  std::sort(fp.entries.begin(), fp.entries.end());
  return fp;
}

// ---------------------------------------------------------------------------
// Fusion-preserving isomorphism search.

struct FusionIso {
  std::vector<std::uint16_t> map;  // S1 canonical local id -> S2 canonical local id
  bool verified = false;
};

namespace detail {

// Per-element fusion-local invariants used to filter candidate images.
struct ElemInvariant {
  std::uint32_t ord, aut_f, f_class, hom_to_s;
  bool operator==(const ElemInvariant&) const = default;
};

inline std::vector<ElemInvariant> element_invariants(const FusionSystem& f) {
  const PGroup& s = f.s_table();
  std::vector<ElemInvariant> out(s.n);
  for (std::uint32_t l = 0; l < s.n; ++l) {
    DynBitset cyc = pgroup_closure(s, {static_cast<std::uint16_t>(l)});
    std::uint32_t idx = f.subgroup_index(cyc);
    out[l] = {s.ord[l], f.aut_count(idx), f.f_class_size(idx),
              static_cast<std::uint32_t>(f.maps_from(idx).size())};
  }
  return out;
}

// Checks the defining property of Definition-level fusion preservation, in
// both directions, for a verified group isomorphism phi.
inline bool fusion_preserving(const FusionSystem& f1, const FusionSystem& f2,
                              const std::vector<std::uint16_t>& phi) {
  if (f1.num_subgroups() != f2.num_subgroups()) return false;
  std::vector<std::uint16_t> phi_inv(phi.size());
  for (std::uint32_t l = 0; l < phi.size(); ++l) phi_inv[phi[l]] = static_cast<std::uint16_t>(l);

  // Subgroup correspondence under phi.
  std::vector<std::uint32_t> sub_map(f1.num_subgroups());
  for (std::uint32_t i = 0; i < f1.num_subgroups(); ++i) {
    DynBitset img(f2.s_table().n);
    f1.subgroup_mask(i).for_each([&](std::uint32_t l) { img.set(phi[l]); });
    sub_map[i] = f2.subgroup_index(img);
  }

  auto forward_ok = [](const FusionSystem& fa, const FusionSystem& fb,
                       const std::vector<std::uint16_t>& ph,
                       const std::vector<std::uint16_t>& ph_inv,
                       const std::vector<std::uint32_t>& smap) {
    for (std::uint32_t i = 0; i < fa.num_subgroups(); ++i) {
      std::uint32_t j = smap[i];
      const auto& members_b = fb.subgroup_members(j);
      // Hash the target's stored tuples for this source.
      std::unordered_set<std::vector<std::uint16_t>, VecU16Hash> have;
      for (const FMap& m : fb.maps_from(j)) have.insert(m.images);
      if (fa.maps_from(i).size() != fb.maps_from(j).size()) return false;
      const auto& members_a = fa.subgroup_members(i);
      for (const FMap& m : fa.maps_from(i)) {
        std::vector<std::uint16_t> conj_tuple(members_b.size());
        for (std::size_t pos = 0; pos < members_b.size(); ++pos) {
          std::uint16_t w = members_b[pos];           // element of phi(P)
          std::uint16_t sa = ph_inv[w];               // its preimage in P
          auto it = std::lower_bound(members_a.begin(), members_a.end(), sa);
          std::size_t apos = static_cast<std::size_t>(it - members_a.begin());
          conj_tuple[pos] = ph[m.images[apos]];
        }
        if (!have.count(conj_tuple)) return false;
      }
    }
    return true;
  };

  std::vector<std::uint32_t> sub_map_inv(f2.num_subgroups());
  for (std::uint32_t i = 0; i < f1.num_subgroups(); ++i) sub_map_inv[sub_map[i]] = i;
  return forward_ok(f1, f2, phi, phi_inv, sub_map) &&
         forward_ok(f2, f1, phi_inv, phi, sub_map_inv);
}

}  // namespace detail

// Backtracking over images of the polycyclic generating sequence of S_1.
// Returns a verified iso, or nullopt after exhausting the (soundly pruned)
// tree.  Throws SearchBudgetExceeded when the node budget runs out.
inline std::optional<FusionIso> find_fusion_preserving_iso(const FusionSystem& f1,
                                                           const FusionSystem& f2,
                                                           std::uint64_t budget = kDefaultSearchBudget,
                                                           std::uint64_t* nodes_out = nullptr) {
  const PGroup& s1 = f1.s_table();
  const PGroup& s2 = f2.s_table();
  std::uint64_t nodes = 0;
  if (s1.n != s2.n) {
    if (nodes_out) *nodes_out = 0;
    return std::nullopt;
  }
  if (s1.n == 1) {
    if (nodes_out) *nodes_out = 1;
    FusionIso iso;
    iso.map = {0};
    iso.verified = true;
    return iso;
  }
  auto inv1 = detail::element_invariants(f1);
  auto inv2 = detail::element_invariants(f2);
  const Pcgs& pc = f1.pcgs();
  const std::size_t m = pc.pivots.size();
  const unsigned p = s1.p;

  // Current partial map: psi[l] = image or UINT16_MAX.
  std::vector<std::uint16_t> psi(s1.n, UINT16_MAX);
  std::vector<bool> in_image(s2.n, false);
  psi[s1.e] = s2.e;
  in_image[s2.e] = true;
  // Domain members at each level, maintained incrementally.
  std::vector<std::uint16_t> domain{s1.e};

  std::optional<FusionIso> found;

  // Levels are processed bottom-up: level k assigns pivots[k], k = m-1 .. 0.
  auto recurse = [&](auto&& self, std::size_t k_plus1) -> bool {
    std::size_t k = k_plus1 - 1;
    std::uint16_t t = pc.pivots[k];
    std::uint16_t tp = s1.power(t, p);
    for (std::uint32_t y = 0; y < s2.n; ++y) {
      if (in_image[y]) continue;
      if (!(inv1[t] == inv2[static_cast<std::uint16_t>(y)])) continue;
      if (++nodes > budget) throw SearchBudgetExceeded(nodes);
      std::uint16_t yy = static_cast<std::uint16_t>(y);
      if (s2.power(yy, p) != psi[tp]) continue;
      bool ok = true;
      for (std::size_t j = k + 1; j < m && ok; ++j) {
        std::uint16_t u = pc.pivots[j];
        if (psi[s1.conj(u, t)] != s2.conj(psi[u], yy)) ok = false;
      }
      if (!ok) continue;
      // Extend psi over Q_k = union of t^a Q_{k+1}.
      std::size_t base = domain.size();
      for (unsigned a = 1; a < p; ++a) {
        std::uint16_t ta = s1.power(t, a);
        std::uint16_t ya = s2.power(yy, a);
        bool clash = false;
        for (std::size_t d = 0; d < base; ++d) {
          std::uint16_t src = s1.times(ta, domain[d]);
          std::uint16_t dst = s2.times(ya, psi[domain[d]]);
          if (in_image[dst]) {  // injectivity violated
            clash = true;
            break;
          }
          psi[src] = dst;
          in_image[dst] = true;
          domain.push_back(src);
        }
        if (clash) break;
      }
      if (domain.size() == base * p) {
        if (k == 0) {
          // Complete map: verify multiplicativity, then fusion preservation.
          bool homo = true;
          for (std::uint32_t a = 0; a < s1.n && homo; ++a)
            for (std::uint32_t b = 0; b < s1.n; ++b)
              if (psi[s1.times(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b))] !=
                  s2.times(psi[a], psi[b])) {
                homo = false;
                break;
              }
          if (homo && detail::fusion_preserving(f1, f2, psi)) {
            FusionIso iso;
            iso.map = psi;
            iso.verified = true;
            found = iso;
          }
        } else {
          self(self, k);
        }
      }
      // Rollback this extension.
      while (domain.size() > base) {
        std::uint16_t src = domain.back();
        domain.pop_back();
        in_image[psi[src]] = false;
        psi[src] = UINT16_MAX;
      }
      if (found) return true;
    }
    return false;
  };

  recurse(recurse, m);
  if (nodes_out) *nodes_out = nodes;
  return found;
}

// ---------------------------------------------------------------------------
// Verdicts.

struct Verdict {
  enum class Kind { Equivalent, Inequivalent, Unknown } kind;
  std::optional<FusionIso> witness;
  std::string certificate;
  std::uint64_t nodes = 0;
};

inline Verdict decide_isotypical(const FusionSystem& f1, const FusionSystem& f2,
                                 std::uint64_t budget = kDefaultSearchBudget) {
  Verdict v{Verdict::Kind::Unknown, std::nullopt, "", 0};
  FusionFingerprint fp1 = fingerprint(f1);
  FusionFingerprint fp2 = fingerprint(f2);
  if (!(fp1 == fp2)) {
    v.kind = Verdict::Kind::Inequivalent;
    v.certificate = "fingerprint: " + fp1.first_difference(fp2);
    return v;
  }
  try {
    std::uint64_t nodes = 0;
    auto iso = find_fusion_preserving_iso(f1, f2, budget, &nodes);
    v.nodes = nodes;
    if (iso) {
      v.kind = Verdict::Kind::Equivalent;
      v.witness = std::move(iso);
    } else {
      v.kind = Verdict::Kind::Inequivalent;
      v.certificate = "exhaustive search: no fusion-preserving isomorphism (" +
                      std::to_string(nodes) + " nodes)";
    }
  } catch (const SearchBudgetExceeded& e) {
    v.kind = Verdict::Kind::Unknown;
    v.nodes = e.nodes_explored;
    v.certificate = "search budget exceeded";
  }
  return v;
}

inline Verdict isotypical_equivalent(const Group& g1, const Group& g2, unsigned p,
                                     FusionCaps caps = {},
                                     std::uint64_t budget = kDefaultSearchBudget) {
  FusionSystem f1(g1, p, caps);
  FusionSystem f2(g2, p, caps);
  return decide_isotypical(f1, f2, budget);
}

// ---------------------------------------------------------------------------
// Rep(P,G): all homomorphisms P -> G up to G-conjugacy.

struct RepSetCaps {
  std::uint32_t p_order_cap = 81;
  std::uint32_t g_order_cap = 100000;
  std::uint64_t node_cap = 50'000'000;
};

struct RepSet {
  std::vector<std::uint16_t> pivots;                // pcgs pivots of P (local ids)
  std::vector<std::vector<std::uint32_t>> classes;  // one image tuple per class
  std::uint32_t count() const { return static_cast<std::uint32_t>(classes.size()); }
};

inline RepSet rep_set(const PGroup& pg, const Group& g, RepSetCaps caps = {}) {
  if (pg.n > caps.p_order_cap)
    throw CapExceeded("rep_set: |P| = " + std::to_string(pg.n) + " exceeds cap");
  if (g.order() > caps.g_order_cap)
    throw CapExceeded("rep_set: |G| = " + std::to_string(g.order()) + " exceeds cap");
  RepSet out;
  if (pg.n == 1) {
    out.classes.push_back({});
    return out;
  }
  if (pg.p == 0) throw InvalidSpec("rep_set: source is not a p-group");
  auto lattice = pgroup_subgroup_lattice(pg);
  Pcgs pc = pgroup_pcgs(pg, lattice);
  out.pivots = pc.pivots;
  const std::size_t m = pc.pivots.size();
  const unsigned p = pg.p;

  // Elements of G of order dividing p^a, for each needed a.
  std::uint32_t max_ord = 1;
  for (std::uint16_t t : pc.pivots) max_ord = std::max(max_ord, pg.ord[t]);
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> by_order_div;
  for (std::uint32_t d = 1; d <= max_ord; d *= p) {
    auto& list = by_order_div[d];
    for (std::uint32_t x = 0; x < g.order(); ++x)
      if (d % g.elem_order(x) == 0) list.push_back(x);
  }

  std::vector<std::uint32_t> psi(pg.n, UINT32_MAX);
  psi[pg.e] = 0;
  std::vector<std::uint16_t> domain{pg.e};
  std::uint64_t nodes = 0;
  std::vector<std::vector<std::uint32_t>> homs;  // pivot image tuples (top-down order)

  auto collect = [&]() {
    // Full homomorphism check before accepting.
    for (std::uint32_t a = 0; a < pg.n; ++a)
      for (std::uint32_t b = 0; b < pg.n; ++b)
        if (psi[pg.times(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b))] !=
            g.mul(psi[a], psi[b]))
          return;
    std::vector<std::uint32_t> tuple(m);
    for (std::size_t i = 0; i < m; ++i) tuple[i] = psi[pc.pivots[i]];
    homs.push_back(std::move(tuple));
  };

  auto recurse = [&](auto&& self, std::size_t k_plus1) -> void {
    std::size_t k = k_plus1 - 1;
    std::uint16_t t = pc.pivots[k];
    std::uint16_t tp = pg.power(t, p);
    bool bottom = (k + 1 == m);
    auto try_candidate = [&](std::uint32_t y) {
      if (++nodes > caps.node_cap) throw CapExceeded("rep_set node cap exceeded");
      // Necessary conditions: power compatibility and conjugation compatibility.
      {
        std::uint32_t acc = y;  // y^p via repeated multiplication
        for (unsigned i = 1; i < p; ++i) acc = g.mul(acc, y);
        if (acc != psi[tp]) return;
      }
      for (std::size_t j = k + 1; j < m; ++j) {
        std::uint16_t u = pc.pivots[j];
        std::uint32_t lhs = psi[pg.conj(u, t)];
        std::uint32_t rhs = g.mul(g.mul(y, psi[u]), g.inverse(y));
        if (lhs != rhs) return;
      }
      std::size_t base = domain.size();
      // y^a computed incrementally.
      std::uint32_t ya = 0;
      for (unsigned a = 1; a < p; ++a) {
        ya = (a == 1) ? y : g.mul(ya, y);
        std::uint16_t ta = pg.power(t, a);
        for (std::size_t d = 0; d < base; ++d) {
          std::uint16_t src = pg.times(ta, domain[d]);
          psi[src] = g.mul(ya, psi[domain[d]]);
          domain.push_back(src);
        }
      }
      if (k == 0) {
        collect();
      } else {
        self(self, k);
      }
      while (domain.size() > base) {
        psi[domain.back()] = UINT32_MAX;
        domain.pop_back();
      }
    };
    if (bottom) {
      // First assigned generator: images range over class representatives only
      // (conjugating a hom moves this image within its class).
      for (std::uint32_t rep : g.class_reps()) {
        if (pg.ord[t] % g.elem_order(rep) != 0) continue;
        try_candidate(rep);
      }
    } else {
      for (std::uint32_t y : by_order_div[pg.ord[t]]) try_candidate(y);
    }
  };
  recurse(recurse, m);

  // Conjugacy reduction.  Homs sharing the (class-normalized) bottom image are
  // conjugate iff conjugate under the centralizer of that image.
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_bottom;
  for (std::size_t i = 0; i < homs.size(); ++i) by_bottom[homs[i][m - 1]].push_back(i);
  struct VecU32Hash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
      std::uint64_t h = 1469598103934665603ull;
      for (std::uint32_t x : v) {
        h ^= x;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  for (auto& [bottom, idxs] : by_bottom) {
    Subgroup cyc = subgroup_closure(g, {bottom});
    Subgroup cent = centralizer(g, cyc);
    auto cgens = subgroup_generators(g, cent);
    std::unordered_set<std::vector<std::uint32_t>, VecU32Hash> assigned;
    std::sort(idxs.begin(), idxs.end(),
              [&](std::size_t a, std::size_t b) { return homs[a] < homs[b]; });
    for (std::size_t i : idxs) {
      if (assigned.count(homs[i])) continue;
      out.classes.push_back(homs[i]);
      // Mark the whole orbit under conjugation by the centralizer.
      std::vector<std::vector<std::uint32_t>> frontier{homs[i]};
      assigned.insert(homs[i]);
      while (!frontier.empty()) {
        auto cur = std::move(frontier.back());
        frontier.pop_back();
        for (std::uint32_t cg : cgens) {
          std::vector<std::uint32_t> nxt(m);
          for (std::size_t j = 0; j < m; ++j) nxt[j] = g.conj(cur[j], cg);
          if (assigned.insert(nxt).second) frontier.push_back(nxt);
        }
      }
    }
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

// ---------------------------------------------------------------------------
// Full-subcategory criterion: F_p(H) is full in F_p(G) iff Rep(P,H) ->
// Rep(P,G) is injective; tested over the subgroups of a Sylow p-subgroup of H.

inline bool check_full_subcategory(const Group& g, const Subgroup& h, unsigned p,
                                   RepSetCaps caps = {}) {
  LiftedGroup lifted = lift_subgroup(g, h);
  const Group& hg = lifted.group;
  Subgroup sh = sylow_subgroup(hg, p);
  auto subs = all_subgroups(hg, sh);
  for (const Subgroup& sub : subs) {
    PGroup pg = pgroup_from_subgroup(hg, sub);
    RepSet rh = rep_set(pg, hg, caps);
    RepSet rg = rep_set(pg, g, caps);
    struct VecU32Hash {
      std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t hh = 1469598103934665603ull;
        for (std::uint32_t x : v) {
          hh ^= x;
          hh *= 1099511628211ull;
        }
        return hh;
      }
    };
    std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecU32Hash> rep_of;
    for (std::size_t i = 0; i < rg.classes.size(); ++i) rep_of.emplace(rg.classes[i], i);
    // rep_set uses the same pcgs for the same PGroup, so tuples align.
    std::unordered_set<std::size_t> hit;
    for (const auto& cls : rh.classes) {
      std::vector<std::uint32_t> pushed(cls.size());
      for (std::size_t j = 0; j < cls.size(); ++j) pushed[j] = lifted.to_parent[cls[j]];
      // Walk the G-conjugation orbit until a canonical representative appears.
      std::optional<std::size_t> cid;
      std::unordered_set<std::vector<std::uint32_t>, VecU32Hash> seen;
      std::vector<std::vector<std::uint32_t>> frontier{pushed};
      seen.insert(pushed);
      if (auto it = rep_of.find(pushed); it != rep_of.end()) cid = it->second;
      while (!cid && !frontier.empty()) {
        auto cur = std::move(frontier.back());
        frontier.pop_back();
        for (std::uint32_t cg : g.small_gens()) {
          std::vector<std::uint32_t> nxt(cur.size());
          for (std::size_t j = 0; j < cur.size(); ++j) nxt[j] = g.conj(cur[j], cg);
          if (seen.insert(nxt).second) {
            if (auto it = rep_of.find(nxt); it != rep_of.end()) {
              cid = it->second;
              break;
            }
            frontier.push_back(nxt);
          }
        }
      }
      if (!cid) throw Error("full-subcategory: pushed class not found (impossible)");
      if (!hit.insert(*cid).second) return false;  // two H-classes fused in G
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Transport of a central p-subgroup along a fusion-preserving isomorphism:
// returns (C_{G2}(Z2), C_{G2}(Z2)/Z2) where Z2 = phi(Z1).

inline std::pair<Group, Group> transport_central(const FusionSystem& f1, const FusionSystem& f2,
                                                 const FusionIso& iso, const Subgroup& z1) {
  const Group& g1 = f1.group();
  const Group& g2 = f2.group();
  if (!is_central(g1, z1)) throw NotCentral("Z1 is not central in G1");
  std::vector<std::uint32_t> z2_ids;
  for (std::uint32_t gid : z1.members()) {
    std::uint32_t l1 = f1.local_of_gid(gid);
    if (l1 == UINT32_MAX) throw NotCentral("Z1 is not contained in the Sylow subgroup");
    z2_ids.push_back(f2.s_table().to_parent[iso.map[l1]]);
  }
  Subgroup z2 = subgroup_from_ids(g2, z2_ids);
  Subgroup c2 = centralizer(g2, z2);
  LiftedGroup lifted = lift_subgroup(g2, c2);
  // Z2 inside the lifted centralizer.
  std::vector<std::uint32_t> z2_local;
  for (std::uint32_t gid : z2_ids)
    z2_local.push_back(*lifted.group.find_payload(g2.payload(gid)));
  Subgroup z2_in = subgroup_from_ids(lifted.group, z2_local);
  Group quot = central_quotient(lifted.group, z2_in);
  Group cent = std::move(lifted.group);
  return {std::move(cent), std::move(quot)};
}

}  // namespace ff
