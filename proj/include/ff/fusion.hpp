#pragma once

// The fusion category F_S(G): a Sylow p-subgroup S, every subgroup of S, and
// for each pair (P,Q) the morphism set Hom_F(P,Q) = {c_x|_P : x P x^{-1} <= Q}.
//
// Construction sweeps x over G once: the conjugates of S's elements under x
// are computed first, and each subgroup whose generators land back inside S
// contributes one induced map.  Maps are deduplicated per source subgroup by
// their image tuple (source members in ascending canonical local id order).
// Hom(P,Q) is then the subset of P's maps with image inside Q.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ff/group.hpp"
#include "ff/pgroup.hpp"
#include "ff/sylow.hpp"

namespace ff {

struct FusionCaps {
  std::uint32_t sylow_order_cap = 243;
  std::uint32_t lattice_cap = 5000;
};

struct FMap {
  std::uint32_t src = 0;                  // source subgroup index
  std::vector<std::uint16_t> images;      // canonical local ids
  DynBitset image_mask;                   // over S-local ids
  std::uint32_t witness = 0;              // least witness x, a G element id
  std::uint32_t witness_count = 0;        // == |C_G(P)| (checked in tests)
};

struct VecU16Hash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint16_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

class FusionSystem {
 public:
  FusionSystem(const Group& g, unsigned p, FusionCaps caps = {}) : g_(&g), p_(p) {
    auto t0 = std::chrono::steady_clock::now();
    S_ = sylow_subgroup(g, p);
    if (S_.order > caps.sylow_order_cap)
      throw LatticeCapExceeded("Sylow order " + std::to_string(S_.order) + " exceeds cap " +
                               std::to_string(caps.sylow_order_cap));
    s_ = pgroup_from_subgroup(g, S_);
    gid_to_local_.assign(g.order(), UINT32_MAX);
    for (std::uint32_t l = 0; l < s_.n; ++l) gid_to_local_[s_.to_parent[l]] = l;
    auto lattice = pgroup_subgroup_lattice(s_, caps.lattice_cap);
    subs_ = std::move(lattice);
    sub_members_.resize(subs_.size());
    sub_gens_.resize(subs_.size());
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      subs_[i].for_each([&](std::uint32_t l) {
        sub_members_[i].push_back(static_cast<std::uint16_t>(l));
      });
      sub_gens_[i] = pgroup_subgroup_generators(s_, subs_[i]);
      sub_index_.emplace(subs_[i], static_cast<std::uint32_t>(i));
    }
    build_maps();
    pcgs_ = pgroup_pcgs(s_, subs_);
    build_ms_ = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  }

  const Group& group() const { return *g_; }
  unsigned prime() const { return p_; }
  const Subgroup& sylow() const { return S_; }
  const PGroup& s_table() const { return s_; }
  const Pcgs& pcgs() const { return pcgs_; }
  std::uint64_t build_millis() const { return build_ms_; }

  std::uint32_t num_subgroups() const { return static_cast<std::uint32_t>(subs_.size()); }
  const DynBitset& subgroup_mask(std::uint32_t i) const { return subs_[i]; }
  const std::vector<std::uint16_t>& subgroup_members(std::uint32_t i) const {
    return sub_members_[i];
  }
  const std::vector<std::uint16_t>& subgroup_gens(std::uint32_t i) const { return sub_gens_[i]; }

  std::uint32_t subgroup_index(const DynBitset& mask) const {
    auto it = sub_index_.find(mask);
    if (it == sub_index_.end()) throw Error("subgroup mask not in lattice");
    return it->second;
  }

  // Subgroup as a parent-group bit-set.
  Subgroup subgroup_in_g(std::uint32_t i) const {
    Subgroup sub{g_, DynBitset(g_->order()),
                 static_cast<std::uint32_t>(sub_members_[i].size())};
    for (std::uint16_t l : sub_members_[i]) sub.mask.set(s_.to_parent[l]);
    return sub;
  }

  std::uint32_t local_of_gid(std::uint32_t gid) const { return gid_to_local_[gid]; }

  // All stored maps with source P (== Hom_F(P,S)).
  const std::vector<FMap>& maps_from(std::uint32_t p_idx) const { return maps_[p_idx]; }

  // Hom_F(P,Q): maps with image inside Q.
  std::vector<const FMap*> hom(std::uint32_t p_idx, std::uint32_t q_idx) const {
    std::vector<const FMap*> out;
    for (const FMap& m : maps_[p_idx])
      if (m.image_mask.is_subset_of(subs_[q_idx])) out.push_back(&m);
    return out;
  }

  std::uint32_t aut_count(std::uint32_t p_idx) const {
    std::uint32_t c = 0;
    for (const FMap& m : maps_[p_idx])
      if (m.image_mask == subs_[p_idx]) ++c;
    return c;
  }

  // Subgroups F-isomorphic to P (via a surjective morphism), including P.
  std::uint32_t f_class_size(std::uint32_t p_idx) const {
    DynBitset seen_targets(num_subgroups());
    for (const FMap& m : maps_[p_idx]) {
      if (m.image_mask.count() == subs_[p_idx].count())
        seen_targets.set(subgroup_index(m.image_mask));
    }
    return static_cast<std::uint32_t>(seen_targets.count());
  }

 private:
  void build_maps() {
    maps_.assign(subs_.size(), {});
    std::vector<std::unordered_map<std::vector<std::uint16_t>, std::uint32_t, VecU16Hash>> dedup(
        subs_.size());
    std::vector<std::uint32_t> conj_local(s_.n);
    const Group& g = *g_;
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      std::uint32_t xin = g.inverse(x);
      for (std::uint32_t l = 0; l < s_.n; ++l) {
        std::uint32_t cg = g.mul(g.mul(x, s_.to_parent[l]), xin);
        conj_local[l] = gid_to_local_[cg];
      }
      for (std::size_t i = 0; i < subs_.size(); ++i) {
        bool inside = true;
        for (std::uint16_t t : sub_gens_[i]) {
          if (conj_local[t] == UINT32_MAX) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        std::vector<std::uint16_t> tuple;
        tuple.reserve(sub_members_[i].size());
        for (std::uint16_t m : sub_members_[i])
          tuple.push_back(static_cast<std::uint16_t>(conj_local[m]));
        auto [it, fresh] = dedup[i].emplace(std::move(tuple),
                                            static_cast<std::uint32_t>(maps_[i].size()));
        if (fresh) {
          FMap fm;
          fm.src = static_cast<std::uint32_t>(i);
          fm.images = it->first;
          fm.image_mask = DynBitset(s_.n);
          for (std::uint16_t im : fm.images) fm.image_mask.set(im);
          fm.witness = x;
          fm.witness_count = 1;
          maps_[i].push_back(std::move(fm));
        } else {
          ++maps_[i][it->second].witness_count;
        }
      }
    }
    for (auto& list : maps_)
      std::sort(list.begin(), list.end(),
                [](const FMap& a, const FMap& b) { return a.images < b.images; });
  }

  const Group* g_;
  unsigned p_;
  Subgroup S_;
  PGroup s_;
  std::vector<std::uint32_t> gid_to_local_;
  std::vector<DynBitset> subs_;
  std::vector<std::vector<std::uint16_t>> sub_members_;
  std::vector<std::vector<std::uint16_t>> sub_gens_;
  std::unordered_map<DynBitset, std::uint32_t, DynBitsetHash> sub_index_;
  std::vector<std::vector<FMap>> maps_;
  Pcgs pcgs_;
  std::uint64_t build_ms_ = 0;
};

inline FusionSystem build_fusion_system(const Group& g, unsigned p, FusionCaps caps = {}) {
  return FusionSystem(g, p, caps);
}

// Focal subgroup via fusion generation: < s^{-1} phi(s) : s in P <= S, phi in
// Hom_F(P,S) >.  The focal subgroup theorem says this equals S intersect
// [G,G]; the test suite asserts that equality, it is not assumed here.
inline Subgroup focal_subgroup(const FusionSystem& f) {
  const PGroup& s = f.s_table();
  std::vector<std::uint16_t> gens;
  DynBitset seen(s.n);
  for (std::uint32_t i = 0; i < f.num_subgroups(); ++i) {
    const auto& members = f.subgroup_members(i);
    for (const FMap& m : f.maps_from(i)) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        std::uint16_t v = s.times(s.inv[members[j]], m.images[j]);
        if (v != s.e && !seen.test(v)) {
          seen.set(v);
          gens.push_back(v);
        }
      }
    }
  }
  DynBitset local = gens.empty() ? [&] {
    DynBitset t(s.n);
    t.set(s.e);
    return t;
  }()
                                 : pgroup_closure(s, gens);
  Subgroup out{&f.group(), DynBitset(f.group().order()),
               static_cast<std::uint32_t>(local.count())};
  local.for_each([&](std::uint32_t l) { out.mask.set(s.to_parent[l]); });
  return out;
}

}  // namespace ff
