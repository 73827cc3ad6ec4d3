#pragma once

// Small named p-groups for the character CLI and tests: cyclic groups as
// single cycles, direct products as disjoint cycles, and Heis<p> = the
// extraspecial group p^{1+2} of exponent p as unitriangular 3x3 matrices.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ff/errors.hpp"
#include "ff/group.hpp"

namespace ff {

inline Group cyclic_group(std::uint32_t n) {
  ElementUniverse u = perm_universe(n == 1 ? 1 : n);
  std::vector<Payload> gens;
  if (n > 1) {
    Payload c(n);
    for (std::uint32_t i = 0; i < n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % n);
    gens.push_back(std::move(c));
  }
  return Group::closure(u, gens);
}

inline Group direct_product_of_cycles(const std::vector<std::uint32_t>& ns) {
  std::uint32_t degree = 0;
  for (std::uint32_t n : ns) degree += n;
  ElementUniverse u = perm_universe(degree);
  std::vector<Payload> gens;
  std::uint32_t off = 0;
  for (std::uint32_t n : ns) {
    Payload c(degree);
    for (std::uint32_t i = 0; i < degree; ++i) c[i] = static_cast<std::uint16_t>(i);
    for (std::uint32_t i = 0; i < n; ++i)
      c[off + i] = static_cast<std::uint16_t>(off + (i + 1) % n);
    gens.push_back(std::move(c));
    off += n;
  }
  return Group::closure(u, gens);
}

// Extraspecial p^{1+2} of exponent p (p odd): upper unitriangular 3x3 over F_p.
inline Group heisenberg_group(std::uint32_t p) {
  if (p < 3) throw InvalidSpec("Heisenberg group needs an odd prime");
  auto F = std::make_shared<const FieldSpec>(build_field(p, 1));
  ElementUniverse u = matrix_universe(3, F);
  auto e = [&](std::uint32_t i, std::uint32_t j) {
    Payload m(9, 0);
    m[0] = m[4] = m[8] = 1;
    m[i * 3 + j] = 1;
    return m;
  };
  return Group::closure(u, {e(0, 1), e(1, 2)});
}

// C9, C3xC3, C5xC5, Heis3, ...
inline Group parse_pgroup_name(const std::string& name) {
  if (name.rfind("Heis", 0) == 0) {
    std::uint32_t p = static_cast<std::uint32_t>(std::stoul(name.substr(4)));
    return heisenberg_group(p);
  }
  std::vector<std::uint32_t> ns;
  std::size_t pos = 0;
  while (pos < name.size()) {
    if (name[pos] != 'C') throw ParseError("bad p-group name: " + name);
    ++pos;
    std::size_t end = pos;
    while (end < name.size() && isdigit(static_cast<unsigned char>(name[end]))) ++end;
    if (end == pos) throw ParseError("bad p-group name: " + name);
    ns.push_back(static_cast<std::uint32_t>(std::stoul(name.substr(pos, end - pos))));
    pos = end;
    if (pos < name.size()) {
      if (name[pos] != 'x') throw ParseError("bad p-group name: " + name);
      ++pos;
    }
  }
  if (ns.empty()) throw ParseError("bad p-group name: " + name);
  if (ns.size() == 1) return cyclic_group(ns[0]);
  return direct_product_of_cycles(ns);
}

}  // namespace ff
