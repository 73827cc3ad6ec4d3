#pragma once

// Group element payloads: square matrices over a FieldSpec (dimension <= 8)
// or permutations.  Payloads are flat uint16 arrays; the canonical byte
// encoding is a fixed header plus big-endian entries, so lexicographic byte
// order and lexicographic entry order agree.
//
// Encoding layout (stable, hashed by fingerprints and reports):
//   matrix:      'M', dim (1 byte), q (2 bytes BE), then dim*dim entries
//   permutation: 'P', degree (2 bytes BE), then degree images
// Entries are 1 byte if they all fit (q <= 256 / degree <= 256), else 2 bytes
// big-endian.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ff/errors.hpp"
#include "ff/field.hpp"

namespace ff {

enum class PayloadKind : std::uint8_t { Matrix, Permutation };

using Payload = std::vector<std::uint16_t>;
using PayloadView = std::span<const std::uint16_t>;

struct ElementUniverse {
  PayloadKind kind;
  std::uint32_t dim;  // matrix dimension, or permutation degree
  std::shared_ptr<const FieldSpec> field;  // null for permutations

  std::size_t stride() const {
    return kind == PayloadKind::Matrix ? static_cast<std::size_t>(dim) * dim : dim;
  }

  bool compatible(const ElementUniverse& o) const {
    if (kind != o.kind || dim != o.dim) return false;
    if (kind == PayloadKind::Matrix) return field && o.field && *field == *o.field;
    return true;
  }
};

inline ElementUniverse matrix_universe(std::uint32_t dim, std::shared_ptr<const FieldSpec> f) {
  if (dim < 1 || dim > 8) throw InvalidSpec("matrix dimension must be in 1..8");
  return ElementUniverse{PayloadKind::Matrix, dim, std::move(f)};
}

inline ElementUniverse perm_universe(std::uint32_t degree, std::uint32_t degree_cap = 64) {
  if (degree < 1 || degree > degree_cap)
    throw InvalidSpec("permutation degree out of range: " + std::to_string(degree));
  return ElementUniverse{PayloadKind::Permutation, degree, nullptr};
}

inline void elem_identity(const ElementUniverse& u, std::uint16_t* out) {
  if (u.kind == PayloadKind::Matrix) {
    for (std::uint32_t i = 0; i < u.dim; ++i)
      for (std::uint32_t j = 0; j < u.dim; ++j) out[i * u.dim + j] = (i == j) ? 1 : 0;
  } else {
    for (std::uint32_t i = 0; i < u.dim; ++i) out[i] = static_cast<std::uint16_t>(i);
  }
}

inline void elem_mul(const ElementUniverse& u, const std::uint16_t* a, const std::uint16_t* b,
                     std::uint16_t* out) {
  if (u.kind == PayloadKind::Matrix) {
    const FieldSpec& F = *u.field;
    const std::uint32_t n = u.dim;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        felt acc = 0;
        for (std::uint32_t k = 0; k < n; ++k) acc = F.add(acc, F.mul(a[i * n + k], b[k * n + j]));
        out[i * n + j] = static_cast<std::uint16_t>(acc);
      }
    }
  } else {
    // (a*b)(x) = a(b(x)), matching the matrix convention of applying b first.
    for (std::uint32_t x = 0; x < u.dim; ++x) out[x] = a[b[x]];
  }
}

inline bool elem_inverse(const ElementUniverse& u, const std::uint16_t* a, std::uint16_t* out) {
  if (u.kind == PayloadKind::Permutation) {
    for (std::uint32_t x = 0; x < u.dim; ++x) out[a[x]] = static_cast<std::uint16_t>(x);
    return true;
  }
  // Gauss-Jordan over the field; returns false if singular.
  const FieldSpec& F = *u.field;
  const std::uint32_t n = u.dim;
  felt m[8][16];
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      m[i][j] = a[i * n + j];
      m[i][n + j] = (i == j) ? 1 : 0;
    }
  }
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return false;
    if (piv != col)
      for (std::uint32_t j = 0; j < 2 * n; ++j) std::swap(m[piv][j], m[col][j]);
    felt iv = F.inv(m[col][col]);
    for (std::uint32_t j = 0; j < 2 * n; ++j) m[col][j] = F.mul(m[col][j], iv);
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      felt f = m[r][col];
      for (std::uint32_t j = 0; j < 2 * n; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[col][j]));
    }
  }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) out[i * n + j] = static_cast<std::uint16_t>(m[i][n + j]);
  return true;
}

inline felt matrix_det(const FieldSpec& F, std::uint32_t n, const std::uint16_t* a) {
  felt m[8][8];
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) m[i][j] = a[i * n + j];
  felt det = 1;
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::uint32_t j = 0; j < n; ++j) std::swap(m[piv][j], m[col][j]);
      det = F.neg(det);
    }
    det = F.mul(det, m[col][col]);
    felt iv = F.inv(m[col][col]);
    for (std::uint32_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      felt f = F.mul(m[r][col], iv);
      for (std::uint32_t j = col; j < n; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[col][j]));
    }
  }
  return det;
}

inline std::uint32_t matrix_rank(const FieldSpec& F, std::uint32_t n, const std::uint16_t* a) {
  felt m[8][8];
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) m[i][j] = a[i * n + j];
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n && rank < n; ++col) {
    std::uint32_t piv = rank;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    for (std::uint32_t j = 0; j < n; ++j) std::swap(m[piv][j], m[rank][j]);
    felt iv = F.inv(m[rank][col]);
    for (std::uint32_t r = rank + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      felt f = F.mul(m[r][col], iv);
      for (std::uint32_t j = col; j < n; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::uint8_t> elem_encode(const ElementUniverse& u, PayloadView a) {
  std::vector<std::uint8_t> out;
  bool wide;
  if (u.kind == PayloadKind::Matrix) {
    std::uint32_t q = u.field->q();
    wide = q > 256;
    out.push_back('M');
    out.push_back(static_cast<std::uint8_t>(u.dim));
    out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xff));
  } else {
    wide = u.dim > 256;
    out.push_back('P');
    out.push_back(static_cast<std::uint8_t>(u.dim >> 8));
    out.push_back(static_cast<std::uint8_t>(u.dim & 0xff));
  }
  for (std::uint16_t v : a) {
    if (wide) out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  return out;
}

// Total order on same-universe payloads (== lexicographic on encodings).
inline int elem_compare(PayloadView a, PayloadView b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

inline bool elem_valid(const ElementUniverse& u, PayloadView a) {
  if (a.size() != u.stride()) return false;
  if (u.kind == PayloadKind::Matrix) {
    for (std::uint16_t v : a)
      if (v >= u.field->q()) return false;
    return matrix_det(*u.field, u.dim, a.data()) != 0;
  }
  std::vector<bool> seen(u.dim, false);
  for (std::uint16_t v : a) {
    if (v >= u.dim || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace ff
