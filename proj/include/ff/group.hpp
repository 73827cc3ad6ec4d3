#pragma once

// Fully enumerated finite groups.  Elements live in a flat payload store and
// are addressed by dense ids; id 0 is the identity, ids follow breadth-first
// discovery order from the generator list, so equal inputs give equal ids
// across runs.  Groups are immutable once built.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ff/bitset.hpp"
#include "ff/element.hpp"
#include "ff/errors.hpp"

namespace ff {

inline constexpr std::uint32_t kDefaultElementCap = 1u << 21;
inline constexpr std::uint32_t kQuotientDegreeCap = 4096;

class Group {
 public:
  // Breadth-first closure of the generator list under multiplication.
  static Group closure(const ElementUniverse& u, const std::vector<Payload>& gens,
                       std::uint32_t cap = kDefaultElementCap) {
    Group g(u);
    for (const auto& gen : gens) {
      if (!elem_valid(u, gen)) throw InvalidSpec("generator is not a valid element");
    }
    g.run_closure(gens, cap);
    g.finalize();
    return g;
  }

  // Order of the generated group, skipping all derived tables.  Used to probe
  // candidate generating sets cheaply.
  static std::uint32_t closure_order_probe(const ElementUniverse& u,
                                           const std::vector<Payload>& gens,
                                           std::uint32_t cap = kDefaultElementCap) {
    Group g(u);
    g.run_closure(gens, cap);
    return g.order();
  }

  const ElementUniverse& universe() const { return u_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(count_); }

  PayloadView payload(std::uint32_t id) const {
    return PayloadView(store_.data() + static_cast<std::size_t>(id) * stride_, stride_);
  }

  std::vector<std::uint8_t> encoding(std::uint32_t id) const {
    return elem_encode(u_, payload(id));
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    std::uint16_t out[64];
    elem_mul(u_, store_.data() + static_cast<std::size_t>(a) * stride_,
             store_.data() + static_cast<std::size_t>(b) * stride_, out);
    auto id = find_payload(PayloadView(out, stride_));
    return *id;  // closed by construction
  }

  std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }

  // x g x^{-1}
  std::uint32_t conj(std::uint32_t g, std::uint32_t x) const {
    return mul(mul(x, g), inv_[x]);
  }

  std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const {
    return mul(mul(a, b), mul(inv_[a], inv_[b]));
  }

  std::uint32_t elem_order(std::uint32_t a) const { return ord_[a]; }

  const std::vector<std::uint32_t>& generator_ids() const { return gen_ids_; }
  // Small regenerated generating set (greedy), used for sweeps.
  const std::vector<std::uint32_t>& small_gens() const { return small_gens_; }

  std::optional<std::uint32_t> find_payload(PayloadView p) const {
    std::uint64_t h = hash_payload(p);
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != 0) {
      std::uint32_t id = slots_[i] - 1;
      if (elem_compare(payload(id), p) == 0) return id;
      i = (i + 1) & mask;
    }
    return std::nullopt;
  }

  // Conjugacy classes, computed on first use is not allowed (immutability):
  // they are produced eagerly by finalize().
  std::uint32_t class_of(std::uint32_t id) const { return class_id_[id]; }
  const std::vector<std::uint32_t>& class_reps() const { return class_reps_; }
  std::uint32_t num_classes() const { return static_cast<std::uint32_t>(class_reps_.size()); }

 private:
  explicit Group(const ElementUniverse& u) : u_(u), stride_(u.stride()) {}

  static std::uint64_t hash_payload(PayloadView p) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint16_t v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }

  std::uint32_t insert_new(PayloadView p) {
    std::uint32_t id = static_cast<std::uint32_t>(count_);
    store_.insert(store_.end(), p.begin(), p.end());
    ++count_;
    if ((count_ + 1) * 10 > slots_.size() * 7) rehash(slots_.size() * 2);
    std::uint64_t h = hash_payload(p);
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != 0) i = (i + 1) & mask;
    slots_[i] = id + 1;
    return id;
  }

  void rehash(std::size_t cap) {
    if (cap < 64) cap = 64;
    slots_.assign(cap, 0);
    std::size_t mask = cap - 1;
    for (std::uint32_t id = 0; id < count_; ++id) {
      std::uint64_t h = hash_payload(payload(id));
      std::size_t i = h & mask;
      while (slots_[i] != 0) i = (i + 1) & mask;
      slots_[i] = id + 1;
    }
  }

  void run_closure(const std::vector<Payload>& gens, std::uint32_t cap) {
    rehash(1024);
    Payload id_payload(stride_);
    elem_identity(u_, id_payload.data());
    insert_new(id_payload);
    std::vector<std::uint32_t> gen_ids;
    for (const auto& gpl : gens) {
      if (auto found = find_payload(gpl)) {
        gen_ids.push_back(*found);
      } else {
        gen_ids.push_back(insert_new(gpl));
      }
    }
    // Dedup generator ids, keep first occurrences.
    for (std::uint32_t gid : gen_ids) {
      if (std::find(gen_ids_.begin(), gen_ids_.end(), gid) == gen_ids_.end())
        gen_ids_.push_back(gid);
    }
    std::uint16_t out[64];
    for (std::uint32_t i = 0; i < count_; ++i) {
      const std::uint16_t* a = store_.data() + static_cast<std::size_t>(i) * stride_;
      for (std::uint32_t gid : gen_ids_) {
        // store_ may reallocate on insert; recompute the base pointer.
        a = store_.data() + static_cast<std::size_t>(i) * stride_;
        elem_mul(u_, a, store_.data() + static_cast<std::size_t>(gid) * stride_, out);
        PayloadView pv(out, stride_);
        if (!find_payload(pv)) {
          if (count_ >= cap)
            throw CapExceeded("group closure exceeds cap " + std::to_string(cap));
          insert_new(pv);
        }
      }
    }
  }

  void finalize() {
    // Inverses.
    inv_.resize(count_);
    std::uint16_t out[64];
    for (std::uint32_t i = 0; i < count_; ++i) {
      elem_inverse(u_, store_.data() + static_cast<std::size_t>(i) * stride_, out);
      inv_[i] = *find_payload(PayloadView(out, stride_));
    }
    // Small generating set: the input list when already small, otherwise a
    // greedy extraction (reflection-style builders pass hundreds).
    small_gens_ = gen_ids_.size() <= 6 ? gen_ids_ : greedy_generators();
    if (small_gens_.empty()) small_gens_.push_back(0);
    // Element orders: walk each cyclic subgroup once; the powers of x of a
    // cycle of length L have order L / gcd(L, j).
    ord_.assign(count_, 0);
    ord_[0] = 1;
    std::vector<std::uint32_t> cycle;
    for (std::uint32_t i = 0; i < count_; ++i) {
      if (ord_[i] != 0) continue;
      cycle.clear();
      std::uint32_t x = i;
      while (x != 0) {
        cycle.push_back(x);
        x = mul(x, i);
      }
      std::uint32_t len = static_cast<std::uint32_t>(cycle.size()) + 1;
      for (std::uint32_t j = 0; j < cycle.size(); ++j) {
        std::uint32_t e = cycle[j];
        if (ord_[e] == 0) ord_[e] = len / std::gcd(len, j + 1);
      }
    }
    // Conjugacy classes: orbit partition under conjugation by small_gens_.
    class_id_.assign(count_, UINT32_MAX);
    for (std::uint32_t i = 0; i < count_; ++i) {
      if (class_id_[i] != UINT32_MAX) continue;
      std::uint32_t cid = static_cast<std::uint32_t>(class_reps_.size());
      class_reps_.push_back(i);
      std::vector<std::uint32_t> frontier{i};
      class_id_[i] = cid;
      while (!frontier.empty()) {
        std::uint32_t x = frontier.back();
        frontier.pop_back();
        for (std::uint32_t g : small_gens_) {
          std::uint32_t y = conj(x, g);
          if (class_id_[y] == UINT32_MAX) {
            class_id_[y] = cid;
            frontier.push_back(y);
          }
        }
      }
    }
  }

  std::vector<std::uint32_t> greedy_generators() const {
    std::vector<std::uint32_t> gens;
    DynBitset covered(count_);
    covered.set(0);
    std::size_t ncov = 1;
    std::uint32_t scan = 1;
    while (ncov < count_) {
      while (scan < count_ && covered.test(scan)) ++scan;
      gens.push_back(scan);
      // Re-close under the enlarged generating set.
      DynBitset nc(count_);
      nc.set(0);
      std::vector<std::uint32_t> members{0};
      for (std::size_t qi = 0; qi < members.size(); ++qi) {
        for (std::uint32_t g : gens) {
          std::uint32_t y = mul(members[qi], g);
          if (!nc.test(y)) {
            nc.set(y);
            members.push_back(y);
          }
        }
      }
      covered = nc;
      ncov = members.size();
    }
    if (gens.empty()) gens.push_back(0);
    return gens;
  }

  ElementUniverse u_;
  std::size_t stride_;
  std::vector<std::uint16_t> store_;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> slots_;  // open addressing, value = id + 1
  std::vector<std::uint32_t> gen_ids_;
  std::vector<std::uint32_t> small_gens_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> ord_;
  std::vector<std::uint32_t> class_id_;
  std::vector<std::uint32_t> class_reps_;
};

// ---------------------------------------------------------------------------
// Subgroups: membership bit-sets over the parent's element ids.

struct Subgroup {
  const Group* parent = nullptr;
  DynBitset mask;
  std::uint32_t order = 0;

  std::vector<std::uint32_t> members() const { return mask.to_ids(); }
  bool contains(std::uint32_t id) const { return mask.test(id); }
};

inline Subgroup trivial_subgroup(const Group& g) {
  Subgroup s{&g, DynBitset(g.order()), 1};
  s.mask.set(0);
  return s;
}

inline Subgroup whole_subgroup(const Group& g) {
  Subgroup s{&g, DynBitset(g.order()), g.order()};
  for (std::uint32_t i = 0; i < g.order(); ++i) s.mask.set(i);
  return s;
}

// Subgroup generated by the given ids.
inline Subgroup subgroup_closure(const Group& g, const std::vector<std::uint32_t>& gens) {
  Subgroup s{&g, DynBitset(g.order()), 0};
  s.mask.set(0);
  std::vector<std::uint32_t> members{0};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::uint32_t gen : gens) {
      std::uint32_t y = g.mul(members[i], gen);
      if (!s.mask.test(y)) {
        s.mask.set(y);
        members.push_back(y);
      }
    }
  }
  s.order = static_cast<std::uint32_t>(members.size());
  return s;
}

inline Subgroup subgroup_from_ids(const Group& g, const std::vector<std::uint32_t>& ids) {
  Subgroup s{&g, DynBitset(g.order()), static_cast<std::uint32_t>(ids.size())};
  for (std::uint32_t i : ids) s.mask.set(i);
  return s;
}

// Small generating set of a subgroup, greedy by least id.
inline std::vector<std::uint32_t> subgroup_generators(const Group& g, const Subgroup& s) {
  std::vector<std::uint32_t> gens;
  if (s.order == 1) return gens;
  Subgroup have = trivial_subgroup(g);
  while (have.order < s.order) {
    std::uint32_t pick = UINT32_MAX;
    for (std::uint32_t id : s.members()) {
      if (!have.mask.test(id)) {
        pick = id;
        break;
      }
    }
    gens.push_back(pick);
    have = subgroup_closure(g, gens);
  }
  return gens;
}

inline bool is_subgroup(const Group& g, const DynBitset& mask) {
  auto ids = mask.to_ids();
  if (ids.empty() || !mask.test(0)) return false;
  for (std::uint32_t a : ids) {
    if (!mask.test(g.inverse(a))) return false;
    for (std::uint32_t b : ids)
      if (!mask.test(g.mul(a, b))) return false;
  }
  return true;
}

// {x in G : xg = gx for every g in a generating set of P}.
inline Subgroup centralizer(const Group& g, const Subgroup& p) {
  auto gens = subgroup_generators(g, p);
  Subgroup c{&g, DynBitset(g.order()), 0};
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : gens) {
      if (g.mul(x, t) != g.mul(t, x)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      c.mask.set(x);
      ++c.order;
    }
  }
  return c;
}

// {x in G : x P x^{-1} = P}.
inline Subgroup normalizer(const Group& g, const Subgroup& p) {
  auto gens = subgroup_generators(g, p);
  Subgroup n{&g, DynBitset(g.order()), 0};
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : gens) {
      if (!p.mask.test(g.conj(t, x))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      n.mask.set(x);
      ++n.order;
    }
  }
  return n;
}

// A conjugation morphism c_x restricted to P, recorded as the image tuple of
// P's elements in ascending id order.  Many witnesses induce one map; the
// witness kept is the least one, and witness_count tallies all of them.
struct TransportMap {
  std::vector<std::uint32_t> images;
  std::uint32_t witness = 0;
  std::uint32_t witness_count = 0;
};

// Mor_{F_p(G)}(P,Q) realized as deduplicated restrictions of conjugations:
// {c_x|_P : x in G, x P x^{-1} <= Q}.
inline std::vector<TransportMap> transporter_maps(const Group& g, const Subgroup& p,
                                                  const Subgroup& q) {
  auto p_ids = p.members();
  auto p_gens = subgroup_generators(g, p);
  std::vector<TransportMap> out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::uint32_t t : p_gens) {
      if (!q.mask.test(g.conj(t, x))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    TransportMap m;
    m.images.reserve(p_ids.size());
    for (std::uint32_t s : p_ids) m.images.push_back(g.conj(s, x));
    m.witness = x;
    m.witness_count = 1;
    bool dup = false;
    for (auto& prev : out) {
      if (prev.images == m.images) {
        ++prev.witness_count;
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const TransportMap& a, const TransportMap& b) { return a.images < b.images; });
  return out;
}

// Derived subgroup: normal closure of the commutators of generator pairs.
inline Subgroup commutator_subgroup(const Group& g) {
  const auto& gens = g.small_gens();
  std::vector<std::uint32_t> seed;
  for (std::uint32_t a : gens)
    for (std::uint32_t b : gens) {
      std::uint32_t c = g.commutator(a, b);
      if (c != 0 && std::find(seed.begin(), seed.end(), c) == seed.end()) seed.push_back(c);
    }
  if (seed.empty()) return trivial_subgroup(g);
  Subgroup k = subgroup_closure(g, seed);
  for (;;) {
    std::vector<std::uint32_t> missing;
    for (std::uint32_t m : k.members()) {
      for (std::uint32_t x : gens) {
        std::uint32_t c = g.conj(m, x);
        if (!k.mask.test(c) &&
            std::find(missing.begin(), missing.end(), c) == missing.end())
          missing.push_back(c);
      }
    }
    if (missing.empty()) return k;
    for (std::uint32_t c : missing) seed.push_back(c);
    k = subgroup_closure(g, seed);
  }
}

inline bool is_central(const Group& g, const Subgroup& z) {
  for (std::uint32_t t : subgroup_generators(g, z))
    for (std::uint32_t x : g.small_gens())
      if (g.mul(t, x) != g.mul(x, t)) return false;
  return true;
}

// A subgroup re-enumerated as a standalone Group, with the id translation.
struct LiftedGroup {
  Group group;
  std::vector<std::uint32_t> to_parent;  // lifted id -> parent id
};

inline LiftedGroup lift_subgroup(const Group& g, const Subgroup& s,
                                 std::uint32_t cap = kDefaultElementCap) {
  auto gens = subgroup_generators(g, s);
  std::vector<Payload> pls;
  for (std::uint32_t id : gens) {
    auto pv = g.payload(id);
    pls.emplace_back(pv.begin(), pv.end());
  }
  LiftedGroup out{Group::closure(g.universe(), pls, cap), {}};
  if (out.group.order() != s.order) throw Error("lift_subgroup: subgroup set not closed");
  out.to_parent.resize(out.group.order());
  for (std::uint32_t i = 0; i < out.group.order(); ++i)
    out.to_parent[i] = *g.find_payload(out.group.payload(i));
  return out;
}

// Quotient by a verified-central subgroup, realized as a permutation group on
// cosets.  A faithful action of degree <= 64 is preferred when some cheap
// overgroup provides one; otherwise the coset-index representation on G/Z is
// used, capped by degree_cap.
inline Group central_quotient(const Group& g, const Subgroup& z,
                              std::uint32_t degree_cap = kQuotientDegreeCap) {
  if (!is_central(g, z)) throw NotCentral("subgroup is not contained in the center");
  std::uint32_t m = g.order() / z.order;

  auto action_on_cosets = [&](const Subgroup& h) -> std::optional<Group> {
    std::uint32_t idx = g.order() / h.order;
    // Left cosets xH, numbered by least member in ascending id order.
    std::vector<std::uint32_t> coset_of(g.order(), UINT32_MAX);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      if (coset_of[x] != UINT32_MAX) continue;
      std::uint32_t c = static_cast<std::uint32_t>(reps.size());
      reps.push_back(x);
      for (std::uint32_t hh : h.members()) coset_of[g.mul(x, hh)] = c;
    }
    std::vector<Payload> gen_perms;
    ElementUniverse pu{PayloadKind::Permutation, idx, nullptr};
    for (std::uint32_t gen : g.small_gens()) {
      Payload perm(idx);
      for (std::uint32_t c = 0; c < idx; ++c) perm[c] = static_cast<std::uint16_t>(
          coset_of[g.mul(gen, reps[c])]);
      gen_perms.push_back(std::move(perm));
    }
    Group img = Group::closure(pu, gen_perms, g.order());
    if (img.order() == m) return img;
    return std::nullopt;
  };

  if (m > 64) {
    // Try to shrink the degree: overgroups <Z, x> for a deterministic sample.
    std::vector<std::uint32_t> sample = g.small_gens();
    for (std::uint32_t x = 1; x < g.order() && sample.size() < 48; ++x) sample.push_back(x);
    for (std::uint32_t x : sample) {
      auto gens = subgroup_generators(g, z);
      gens.push_back(x);
      Subgroup h = subgroup_closure(g, gens);
      if (h.order == g.order()) continue;
      if (g.order() / h.order > 64) continue;
      if (auto img = action_on_cosets(h)) return std::move(*img);
    }
  }
  if (m > degree_cap)
    throw CapExceeded("quotient coset count " + std::to_string(m) + " exceeds degree cap");
  auto img = action_on_cosets(z);
  if (!img) throw Error("central quotient: coset action has wrong order");  // unreachable
  return std::move(*img);
}

}  // namespace ff
