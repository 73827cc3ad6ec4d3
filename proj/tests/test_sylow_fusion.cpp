#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ff/classical.hpp"
#include "ff/fusion.hpp"
#include "ff/named_groups.hpp"
#include "ff/sylow.hpp"

using namespace ff;

static Group sl2_2() { return build_classical(FamilySpec::parse("SL(2,2)")); }

TEST_CASE("sylow subgroup examples") {
  Group g = sl2_2();
  Subgroup s = sylow_subgroup(g, 3);
  REQUIRE(s.order == 3);
  // p not dividing |G|: trivial.
  REQUIRE(sylow_subgroup(g, 5).order == 1);

  Group gl27 = build_classical(FamilySpec::parse("GL(2,7)"));
  Subgroup s3 = sylow_subgroup(gl27, 3);
  REQUIRE(s3.order == 9);
  // Elementary abelian: every nontrivial element has order 3.
  for (std::uint32_t m : s3.members())
    if (m != 0) REQUIRE(gl27.elem_order(m) == 3);
}

TEST_CASE("sylow conjugacy: every cyclic p-subgroup conjugates into S") {
  for (const char* spec : {"SL(2,2)", "GL(2,4)", "SL(2,7)", "GU(2,2)"}) {
    Group g = build_classical(FamilySpec::parse(spec));
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      if (g.order() % p != 0) continue;
      Subgroup s = sylow_subgroup(g, p);
      std::uint64_t target = 1;
      for (std::uint64_t t = g.order(); t % p == 0; t /= p) target *= p;
      REQUIRE(s.order == target);
      INFO(spec << " p=" << p);
      for (std::uint32_t e = 0; e < g.order(); ++e) {
        if (!is_p_power(p, g.elem_order(e)) || g.elem_order(e) == 1) continue;
        bool found = false;
        for (std::uint32_t x = 0; x < g.order() && !found; ++x)
          if (s.mask.test(g.conj(e, x))) found = true;
        REQUIRE(found);
      }
    }
  }
}

// Naive oracle: subgroups of S as closures of all generating sets of size <= 3.
static std::set<std::vector<std::uint32_t>> naive_subgroups(const Group& g, const Subgroup& s) {
  auto ids = s.members();
  std::set<std::vector<std::uint32_t>> out;
  out.insert(trivial_subgroup(g).members());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.insert(subgroup_closure(g, {ids[i]}).members());
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      out.insert(subgroup_closure(g, {ids[i], ids[j]}).members());
      for (std::size_t k = j + 1; k < ids.size(); ++k)
        out.insert(subgroup_closure(g, {ids[i], ids[j], ids[k]}).members());
    }
  }
  return out;
}

TEST_CASE("all_subgroups: counts and naive recount") {
  Group c3 = cyclic_group(3);
  REQUIRE(all_subgroups(c3, whole_subgroup(c3)).size() == 2);

  Group c33 = direct_product_of_cycles({3, 3});
  auto subs = all_subgroups(c33, whole_subgroup(c33));
  REQUIRE(subs.size() == 6);  // 1 + four C_3 + S

  Group h3 = heisenberg_group(3);
  REQUIRE(h3.order() == 27);
  // Exponent 3: extraspecial 3^{1+2}_+.
  for (std::uint32_t i = 1; i < 27; ++i) REQUIRE(h3.elem_order(i) == 3);
  auto hsubs = all_subgroups(h3, whole_subgroup(h3));
  REQUIRE(hsubs.size() == naive_subgroups(h3, whole_subgroup(h3)).size());
  PGroup pg = pgroup_from_group(h3);
  DynBitset whole(pg.n);
  for (std::uint32_t i = 0; i < pg.n; ++i) whole.set(i);
  REQUIRE(pgroup_center(pg, whole).count() == 3);
  // Sorted by (order, canonical bit-set), each exactly once.
  for (std::size_t i = 1; i < hsubs.size(); ++i) {
    REQUIRE(hsubs[i - 1].order <= hsubs[i].order);
    REQUIRE(!(hsubs[i - 1].mask == hsubs[i].mask));
  }
  // C_3 x C_3 naive recount as well.
  REQUIRE(naive_subgroups(c33, whole_subgroup(c33)).size() == 6);
}

TEST_CASE("fusion system of SL_2(2) at p=3") {
  Group g = sl2_2();
  FusionSystem f(g, 3);
  REQUIRE(f.sylow().order == 3);
  REQUIRE(f.num_subgroups() == 2);
  std::uint32_t c3 = 1;  // index 0 = trivial, 1 = C_3
  REQUIRE(f.subgroup_members(c3).size() == 3);
  REQUIRE(f.hom(c3, c3).size() == 2);  // identity and inversion
  REQUIRE(f.aut_count(c3) == 2);
}

TEST_CASE("abelian Sylow with abelian ambient group: only inclusions") {
  Group c9 = cyclic_group(9);
  FusionSystem f(c9, 3);
  for (std::uint32_t i = 0; i < f.num_subgroups(); ++i) {
    REQUIRE(f.maps_from(i).size() == 1);
    const FMap& m = f.maps_from(i).front();
    for (std::size_t j = 0; j < m.images.size(); ++j)
      REQUIRE(m.images[j] == f.subgroup_members(i)[j]);
  }
}

TEST_CASE("GL_2(4): Aut_F(S) = |N(S)/C(S)| = 2 and |N| = 18") {
  Group g = build_classical(FamilySpec::parse("GL(2,4)"));
  Subgroup s = sylow_subgroup(g, 3);
  REQUIRE(s.order == 9);
  Subgroup n = normalizer(g, s);
  Subgroup c = centralizer(g, s);
  REQUIRE(n.order == 18);
  REQUIRE(c.order == 9);
  FusionSystem f(g, 3);
  std::uint32_t top = f.num_subgroups() - 1;
  REQUIRE(f.subgroup_members(top).size() == 9);
  REQUIRE(f.aut_count(top) == n.order / c.order);
}

// Fusion axioms: inclusions present, restriction-closed, composition-closed,
// morphisms injective.  Checked exhaustively on the given system.
static void check_fusion_axioms(const FusionSystem& f) {
  const PGroup& s = f.s_table();
  for (std::uint32_t pi = 0; pi < f.num_subgroups(); ++pi) {
    const auto& members = f.subgroup_members(pi);
    bool has_id = false;
    for (const FMap& m : f.maps_from(pi)) {
      // Injectivity: the image is a subgroup of equal size.
      REQUIRE(m.image_mask.count() == members.size());
      bool id = true;
      for (std::size_t j = 0; j < members.size(); ++j)
        if (m.images[j] != members[j]) id = false;
      if (id) has_id = true;
      // Multiplicativity of the recorded map.
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < members.size(); ++b) {
          std::uint16_t prod = s.times(members[a], members[b]);
          auto pos = std::lower_bound(members.begin(), members.end(), prod) - members.begin();
          REQUIRE(s.times(m.images[a], m.images[b]) == m.images[pos]);
        }
    }
    REQUIRE(has_id);
    // Restriction closure.
    for (std::uint32_t pj = 0; pj < f.num_subgroups(); ++pj) {
      if (pj == pi) continue;
      if (!f.subgroup_mask(pj).is_subset_of(f.subgroup_mask(pi))) continue;
      const auto& sub_members = f.subgroup_members(pj);
      for (const FMap& m : f.maps_from(pi)) {
        std::vector<std::uint16_t> restricted;
        for (std::uint16_t e : sub_members) {
          auto pos = std::lower_bound(members.begin(), members.end(), e) - members.begin();
          restricted.push_back(m.images[pos]);
        }
        bool found = false;
        for (const FMap& mm : f.maps_from(pj))
          if (mm.images == restricted) found = true;
        REQUIRE(found);
      }
    }
    // Composition closure.
    for (const FMap& m : f.maps_from(pi)) {
      std::uint32_t img_idx = f.subgroup_index(m.image_mask);
      const auto& img_members = f.subgroup_members(img_idx);
      for (const FMap& m2 : f.maps_from(img_idx)) {
        std::vector<std::uint16_t> comp;
        for (std::size_t j = 0; j < members.size(); ++j) {
          auto pos = std::lower_bound(img_members.begin(), img_members.end(), m.images[j]) -
                     img_members.begin();
          comp.push_back(m2.images[pos]);
        }
        bool found = false;
        for (const FMap& mm : f.maps_from(pi))
          if (mm.images == comp) found = true;
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("fusion axioms hold on sample systems") {
  check_fusion_axioms(FusionSystem(sl2_2(), 3));
  check_fusion_axioms(FusionSystem(build_classical(FamilySpec::parse("GL(2,4)")), 3));
  check_fusion_axioms(FusionSystem(build_classical(FamilySpec::parse("GU(2,2)")), 3));
  check_fusion_axioms(FusionSystem(build_classical(FamilySpec::parse("SL(2,7)")), 2));
}

TEST_CASE("transporter counting identity |Hom(P,S)| |C_G(P)| = |T(P,S)|") {
  for (const char* spec : {"SL(2,2)", "GL(2,4)", "SL(2,3)"}) {
    Group g = build_classical(FamilySpec::parse(spec));
    for (unsigned p : {2u, 3u}) {
      if (g.order() % p != 0) continue;
      FusionSystem f(g, p);
      for (std::uint32_t pi = 0; pi < f.num_subgroups(); ++pi) {
        Subgroup pg = f.subgroup_in_g(pi);
        std::uint32_t cent = centralizer(g, pg).order;
        for (const FMap& m : f.maps_from(pi)) REQUIRE(m.witness_count == cent);
        // Against the algebra-core transporter for Q = S.
        auto tmaps = transporter_maps(g, pg, f.sylow());
        REQUIRE(tmaps.size() == f.maps_from(pi).size());
      }
    }
  }
}

TEST_CASE("focal subgroup equals S intersect [G,G]") {
  struct Case {
    const char* spec;
    unsigned p;
  } cases[] = {{"SL(2,2)", 3}, {"GL(2,7)", 3}, {"GL(2,4)", 3}, {"SL(2,7)", 2}, {"GU(2,2)", 3}};
  for (const auto& c : cases) {
    Group g = build_classical(FamilySpec::parse(c.spec));
    FusionSystem f(g, c.p);
    Subgroup focal = focal_subgroup(f);
    Subgroup derived = commutator_subgroup(g);
    DynBitset meet = f.sylow().mask & derived.mask;
    INFO(c.spec << " p=" << c.p);
    REQUIRE(focal.mask == meet);
  }
  // Abelian G: trivial focal subgroup.
  Group c9 = cyclic_group(9);
  FusionSystem f(c9, 3);
  REQUIRE(focal_subgroup(f).order == 1);
}

TEST_CASE("focal subgroup of SL_2(2) at 3 is the whole C_3") {
  Group g = sl2_2();
  FusionSystem f(g, 3);
  REQUIRE(focal_subgroup(f).order == 3);
}

TEST_CASE("GL_2(7): focal = S intersect SL_2(7), order 3") {
  Group g = build_classical(FamilySpec::parse("GL(2,7)"));
  FusionSystem f(g, 3);
  REQUIRE(focal_subgroup(f).order == 3);
}

TEST_CASE("lattice caps raise structured errors") {
  Group big = build_classical(FamilySpec::parse("SL(2,7)"));
  REQUIRE_THROWS_AS(FusionSystem(big, 2, FusionCaps{8, 5000}), LatticeCapExceeded);
}
