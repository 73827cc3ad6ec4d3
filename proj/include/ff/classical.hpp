#pragma once

// Constructors for the classical families GL, SL, GU, SU, Sp, O, SO, Omega,
// GO over small fields, with the standard order formulas as independent
// cross-checks.  Every constructed group is verified against its formula.
//
// Construction routes:
//   GL/SL  elementary transvections over an F_p-basis, plus one diagonal.
//   Sp     symplectic transvections for every projective direction.
//   O/GO   reflections r_v (x -> x - B(x,v)/Q(v) v), all characteristics;
//          the lone classical exception O_4^+(2) falls back to filtering
//          the ambient GL.
//   SO     q odd: products of reflection pairs (det 1); q even: SO := O
//          (the determinant is identically 1 in characteristic two).
//   Omega  q odd: the subgroup generated by all squares of SO.  Squares lie
//          in the spinor kernel, so the verified index [SO:Omega] = 2 forces
//          equality with the kernel.  q even: Dickson kernel, computed as
//          rank(g - 1) mod 2.
//   GU/SU  unitary transvections for isotropic directions (plus a diagonal
//          of norm-one determinant); the small exceptions (2,2), (2,3),
//          (3,2) filter the ambient GL_n(q^2) instead.

#include <algorithm>
#include <numeric>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ff/element.hpp"
#include "ff/field.hpp"
#include "ff/group.hpp"

namespace ff {

enum class Family { GL, SL, GU, SU, Sp, O, SO, Omega, GO };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::GU: return "GU";
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::O: return "O";
    case Family::SO: return "SO";
    case Family::Omega: return "Omega";
    case Family::GO: return "GO";
  }
  return "?";
}

struct FamilySpec {
  Family fam;
  std::uint32_t n = 0;
  int eps = 0;  // +1 / -1 / 0 = none
  std::uint64_t q = 0;

  bool is_orthogonal() const {
    return fam == Family::O || fam == Family::SO || fam == Family::Omega || fam == Family::GO;
  }

  void validate() const {
    std::uint64_t p;
    unsigned k;
    if (!prime_power_decompose(q, p, k))
      throw InvalidSpec("q = " + std::to_string(q) + " is not a prime power");
    if (n < 1 || n > 8) throw InvalidSpec("dimension must be in 1..8");
    if (fam == Family::Sp) {
      if (n % 2 != 0) throw InvalidSpec("Sp requires even dimension");
      if (eps != 0) throw InvalidSpec("Sp takes no sign");
    } else if (is_orthogonal()) {
      if (n % 2 == 0) {
        if (eps != 1 && eps != -1)
          throw InvalidSpec("even-dimensional orthogonal families require a sign");
      } else {
        if (eps != 0) throw InvalidSpec("odd-dimensional orthogonal families take no sign");
        if (q % 2 == 0)
          throw InvalidSpec("odd-dimensional orthogonal groups are degenerate for even q");
      }
    } else {
      if (eps != 0) throw InvalidSpec(std::string(family_name(fam)) + " takes no sign");
    }
  }

  std::string str() const {
    std::string s = family_name(fam);
    s += "(" + std::to_string(n) + ",";
    if (n % 2 == 0 && is_orthogonal()) s += (eps > 0 ? std::string("+") : std::string("-")) + ",";
    s += std::to_string(q) + ")";
    return s;
  }

  // Canonical text syntax: GL(2,7), GU(3,2), Sp(4,3), Omega(4,+,4), GO(5,3).
  static FamilySpec parse(const std::string& text) {
    std::size_t open = text.find('(');
    std::size_t close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ParseError("malformed family spec: " + text);
    std::string name = text.substr(0, open);
    FamilySpec fs;
    if (name == "GL") fs.fam = Family::GL;
    else if (name == "SL") fs.fam = Family::SL;
    else if (name == "GU") fs.fam = Family::GU;
    else if (name == "SU") fs.fam = Family::SU;
    else if (name == "Sp") fs.fam = Family::Sp;
    else if (name == "O") fs.fam = Family::O;
    else if (name == "SO") fs.fam = Family::SO;
    else if (name == "Omega") fs.fam = Family::Omega;
    else if (name == "GO") fs.fam = Family::GO;
    else throw ParseError("unknown family: " + name);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text.substr(open + 1, close - open - 1)) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else if (!isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    parts.push_back(cur);
    auto to_num = [&](const std::string& s) -> std::uint64_t {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad number '" + s + "' in " + text);
      return std::stoull(s);
    };
    if (parts.size() == 2) {
      fs.n = static_cast<std::uint32_t>(to_num(parts[0]));
      fs.q = to_num(parts[1]);
    } else if (parts.size() == 3) {
      fs.n = static_cast<std::uint32_t>(to_num(parts[0]));
      if (parts[1] == "+") fs.eps = 1;
      else if (parts[1] == "-") fs.eps = -1;
      else throw ParseError("bad sign '" + parts[1] + "' in " + text);
      fs.q = to_num(parts[2]);
    } else {
      throw ParseError("expected 2 or 3 arguments in " + text);
    }
    fs.validate();
    return fs;
  }
};

// ---------------------------------------------------------------------------
// Order formulas (exact, unsigned 128-bit, overflow-checked).

using u128 = unsigned __int128;

inline u128 mul_checked(u128 a, u128 b) {
  if (a != 0 && b > static_cast<u128>(-1) / a) throw CapExceeded("order formula overflow");
  return a * b;
}

inline u128 upow(std::uint64_t base, std::uint32_t e) {
  u128 r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = mul_checked(r, base);
  return r;
}

inline std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s += static_cast<char>('0' + static_cast<unsigned>(v % 10));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline u128 order_formula(const FamilySpec& spec) {
  spec.validate();
  const std::uint64_t q = spec.q;
  const std::uint32_t n = spec.n;
  switch (spec.fam) {
    case Family::GL: {
      u128 r = 1;
      for (std::uint32_t i = 0; i < n; ++i) r = mul_checked(r, upow(q, n) - upow(q, i));
      return r;
    }
    case Family::SL:
      return order_formula({Family::GL, n, 0, q}) / (q - 1);
    case Family::GU: {
      u128 r = upow(q, n * (n - 1) / 2);
      for (std::uint32_t i = 1; i <= n; ++i) {
        u128 t = upow(q, i);
        r = mul_checked(r, (i % 2 == 0) ? t - 1 : t + 1);
      }
      return r;
    }
    case Family::SU:
      return order_formula({Family::GU, n, 0, q}) / (q + 1);
    case Family::Sp: {
      std::uint32_t m = n / 2;
      u128 r = upow(q, m * m);
      for (std::uint32_t i = 1; i <= m; ++i) r = mul_checked(r, upow(q, 2 * i) - 1);
      return r;
    }
    case Family::O:
    case Family::SO:
    case Family::Omega:
    case Family::GO: {
      if (n % 2 == 1) {
        // q odd here (validated).  GO = SO x {+-1}.
        std::uint32_t m = (n - 1) / 2;
        if (m == 0) {  // O_1 = {+-1}
          if (spec.fam == Family::O || spec.fam == Family::GO) return 2;
          return 1;
        }
        u128 so = upow(q, m * m);
        for (std::uint32_t i = 1; i <= m; ++i) so = mul_checked(so, upow(q, 2 * i) - 1);
        if (spec.fam == Family::O || spec.fam == Family::GO) return mul_checked(so, 2);
        if (spec.fam == Family::SO) return so;
        return so / 2;  // Omega
      }
      std::uint32_t m = n / 2;
      u128 o = 2;
      o = mul_checked(o, upow(q, m * (m - 1)));
      o = mul_checked(o, spec.eps > 0 ? upow(q, m) - 1 : upow(q, m) + 1);
      for (std::uint32_t i = 1; i + 1 <= m; ++i) o = mul_checked(o, upow(q, 2 * i) - 1);
      bool even_q = (q % 2 == 0);
      switch (spec.fam) {
        case Family::O:
        case Family::GO:
          return o;
        case Family::SO:
          return even_q ? o : o / 2;
        case Family::Omega:
          return even_q ? o / 2 : o / 4;
        default:
          break;
      }
    }
  }
  throw InvalidSpec("unhandled family");
}

// [GO_{2n+1}(q) : GO_{2n}^eps(q)] compared against the closed form
// q^n (q^n + eps).  Not applicable for even q (degenerate odd-dim groups).
struct IndexCheck {
  bool applicable = false;
  u128 index = 0;
  u128 closed_form = 0;
  bool equal = false;
};

inline IndexCheck index_check(std::uint32_t n, std::uint64_t q, int eps) {
  IndexCheck r;
  if (q % 2 == 0) return r;  // NotApplicable
  r.applicable = true;
  u128 big = order_formula({Family::GO, 2 * n + 1, 0, q});
  u128 small = order_formula({Family::GO, 2 * n, eps, q});
  r.index = big / small;
  u128 qn = upow(q, n);
  r.closed_form = mul_checked(qn, eps > 0 ? qn + 1 : qn - 1);
  r.equal = (r.index == r.closed_form) && (big % small == 0);
  return r;
}

// ---------------------------------------------------------------------------
// Forms.

struct FormData {
  enum class Kind { Hermitian, Symplectic, Quadratic } kind;
  std::uint32_t n = 0;
  std::vector<felt> coeff;  // n x n: Gram matrix, or upper-triangular Q coeffs
  int eps = 0;              // quadratic even-dim type witness
};

inline FormData symplectic_form(std::uint32_t n, const FieldSpec& F) {
  FormData f{FormData::Kind::Symplectic, n, std::vector<felt>(n * n, 0), 0};
  std::uint32_t m = n / 2;
  for (std::uint32_t i = 0; i < m; ++i) {
    f.coeff[i * n + (n - 1 - i)] = 1;
    f.coeff[(n - 1 - i) * n + i] = F.neg(1);
  }
  return f;
}

inline FormData hermitian_form(std::uint32_t n) {
  FormData f{FormData::Kind::Hermitian, n, std::vector<felt>(n * n, 0), 0};
  for (std::uint32_t i = 0; i < n; ++i) f.coeff[i * n + i] = 1;
  return f;
}

inline felt quad_eval(const FormData& f, const FieldSpec& F, const felt* v) {
  felt acc = 0;
  for (std::uint32_t i = 0; i < f.n; ++i)
    for (std::uint32_t j = i; j < f.n; ++j)
      acc = F.add(acc, F.mul(f.coeff[i * f.n + j], F.mul(v[i], v[j])));
  return acc;
}

// Least-lex anisotropic binary quadratic form a x^2 + b xy + c y^2.
inline void least_anisotropic_binary(const FieldSpec& F, felt& a, felt& b, felt& c) {
  std::uint64_t q = F.q();
  for (std::uint64_t aa = 0; aa < q; ++aa)
    for (std::uint64_t bb = 0; bb < q; ++bb)
      for (std::uint64_t cc = 0; cc < q; ++cc) {
        bool aniso = true;
        for (std::uint64_t x = 0; x < q && aniso; ++x)
          for (std::uint64_t y = 0; y < q && aniso; ++y) {
            if (x == 0 && y == 0) continue;
            felt val = F.add(F.add(F.mul(static_cast<felt>(aa), F.mul(x, x)),
                                   F.mul(static_cast<felt>(bb), F.mul(x, y))),
                             F.mul(static_cast<felt>(cc), F.mul(y, y)));
            if (val == 0) aniso = false;
          }
        if (aniso) {
          a = static_cast<felt>(aa);
          b = static_cast<felt>(bb);
          c = static_cast<felt>(cc);
          return;
        }
      }
  throw Error("no anisotropic binary form (impossible over a finite field)");
}

// Hyperbolic planes, plus an anisotropic tail for eps = -1 / odd dimension.
inline FormData quadratic_form(std::uint32_t n, int eps, const FieldSpec& F) {
  FormData f{FormData::Kind::Quadratic, n, std::vector<felt>(n * n, 0), eps};
  if (n % 2 == 1) {
    std::uint32_t m = (n - 1) / 2;
    for (std::uint32_t i = 0; i < m; ++i) f.coeff[(2 * i) * n + (2 * i + 1)] = 1;
    f.coeff[(n - 1) * n + (n - 1)] = 1;
    return f;
  }
  std::uint32_t m = n / 2;
  std::uint32_t planes = (eps > 0) ? m : m - 1;
  for (std::uint32_t i = 0; i < planes; ++i) f.coeff[(2 * i) * n + (2 * i + 1)] = 1;
  if (eps < 0) {
    felt a, b, c;
    least_anisotropic_binary(F, a, b, c);
    f.coeff[(n - 2) * n + (n - 2)] = a;
    f.coeff[(n - 2) * n + (n - 1)] = b;
    f.coeff[(n - 1) * n + (n - 1)] = c;
  }
  return f;
}

// Number of zeros of a nondegenerate even-dimensional form of type eps.
inline std::uint64_t expected_quadric_zeros(std::uint64_t q, std::uint32_t n, int eps) {
  std::uint32_t m = n / 2;
  std::uint64_t qm = 1, qm1 = 1;
  for (std::uint32_t i = 0; i < m; ++i) qm *= q;
  for (std::uint32_t i = 0; i + 1 < m; ++i) qm1 *= q;
  std::uint64_t base = 1;
  for (std::uint32_t i = 0; i + 1 < n; ++i) base *= q;
  return eps > 0 ? base + (qm - qm1) : base - (qm - qm1);
}

inline bool preserves_form(const FormData& f, const FieldSpec& F, std::uint32_t n,
                           const std::uint16_t* M) {
  if (f.kind == FormData::Kind::Hermitian) {
    // conj(M)^T J M == J with conj = x -> x^q0, q0^2 = |F|.
    std::uint64_t q0 = 1;
    {
      std::uint64_t p;
      unsigned k;
      prime_power_decompose(F.q(), p, k);
      for (unsigned i = 0; i < k / 2; ++i) q0 *= p;
    }
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        felt acc = 0;
        for (std::uint32_t a = 0; a < n; ++a)
          for (std::uint32_t b = 0; b < n; ++b)
            acc = F.add(acc, F.mul(F.pow(M[a * n + i], q0),
                                   F.mul(f.coeff[a * n + b], M[b * n + j])));
        if (acc != f.coeff[i * n + j]) return false;
      }
    return true;
  }
  if (f.kind == FormData::Kind::Symplectic) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        felt acc = 0;
        for (std::uint32_t a = 0; a < n; ++a)
          for (std::uint32_t b = 0; b < n; ++b)
            acc = F.add(acc, F.mul(M[a * n + i], F.mul(f.coeff[a * n + b], M[b * n + j])));
        if (acc != f.coeff[i * n + j]) return false;
      }
    return true;
  }
  // Quadratic: V = M^T U M must satisfy diag(V) == diag(U) and
  // V + V^T == U + U^T.
  std::vector<felt> v(n * n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      felt acc = 0;
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          acc = F.add(acc, F.mul(M[a * n + i], F.mul(f.coeff[a * n + b], M[b * n + j])));
      v[i * n + j] = acc;
    }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (v[i * n + i] != f.coeff[i * n + i]) return false;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (F.add(v[i * n + j], v[j * n + i]) != F.add(f.coeff[i * n + j], f.coeff[j * n + i]))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Builders.

namespace detail {

// Closure with generator escalation.  Candidate generating sets are probed
// (order only) before paying for a full build: first a few deterministic
// product-words of the provable list (two or three long words almost always
// generate a classical group), then strided prefixes, then the full list.
// Every route is verified against the expected order, so a failed heuristic
// costs time but never correctness.
inline Group closure_escalated(const ElementUniverse& u, const std::vector<Payload>& gens,
                               u128 expect, std::uint32_t cap) {
  if (expect > cap)
    throw CapExceeded("predicted order " + u128_str(expect) + " exceeds cap " +
                      std::to_string(cap));
  const std::size_t n = gens.size();
  auto try_build = [&](const std::vector<Payload>& cand) -> std::optional<Group> {
    if (Group::closure_order_probe(u, cand, cap) != static_cast<std::uint32_t>(expect))
      return std::nullopt;
    return Group::closure(u, cand, cap);
  };
  if (n > 3) {
    std::uint64_t lcg = 0x5deece66dull;
    auto next = [&]() {
      lcg = lcg * 6364136223846793005ull + 1442695040888963407ull;
      return static_cast<std::size_t>((lcg >> 33) % n);
    };
    const std::size_t word_len = 2 * n;
    std::vector<Payload> words;
    std::uint16_t acc[64], tmp[64];
    for (std::size_t k = 0; k < 4; ++k) {
      elem_identity(u, acc);
      for (std::size_t t = 0; t < word_len; ++t) {
        elem_mul(u, acc, gens[next()].data(), tmp);
        std::copy(tmp, tmp + u.stride(), acc);
      }
      words.emplace_back(acc, acc + u.stride());
      if (words.size() < 2) continue;
      if (auto g = try_build(words)) return std::move(*g);
    }
  }
  std::vector<std::size_t> order_idx;
  if (n > 0) {
    std::size_t stride = (n * 5) / 8;
    if (stride < 1) stride = 1;
    while (std::gcd(stride, n) != 1) ++stride;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      order_idx.push_back(j);
      j = (j + stride) % n;
    }
  }
  for (std::size_t cnt = 8; cnt < n; cnt *= 2) {
    std::vector<Payload> prefix;
    prefix.reserve(cnt);
    for (std::size_t i = 0; i < cnt; ++i) prefix.push_back(gens[order_idx[i]]);
    if (auto g = try_build(prefix)) return std::move(*g);
  }
  Group g = Group::closure(u, gens, cap);
  if (g.order() != static_cast<std::uint32_t>(expect))
    throw Error("constructed order " + std::to_string(g.order()) + " != formula " +
                u128_str(expect));
  return g;
}

// Group from an explicit closed element set (greedy generator extraction).
inline Group group_from_elements(const ElementUniverse& u, std::vector<Payload> elems,
                                 std::uint32_t cap = kDefaultElementCap) {
  std::sort(elems.begin(), elems.end(),
            [](const Payload& a, const Payload& b) { return elem_compare(a, b) < 0; });
  std::vector<Payload> gens;
  Group h = Group::closure(u, gens, cap);
  while (h.order() < elems.size()) {
    for (const Payload& x : elems) {
      if (!h.find_payload(x)) {
        gens.push_back(x);
        break;
      }
    }
    h = Group::closure(u, gens, cap);
    if (h.order() > elems.size()) throw Error("element set is not closed under products");
  }
  return h;
}

inline Payload identity_matrix(std::uint32_t n) {
  Payload m(n * n, 0);
  for (std::uint32_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

// F_p-basis of the field: 1, g, ..., g^{k-1} for the stored generator.
inline std::vector<felt> additive_basis(const FieldSpec& F) {
  std::vector<felt> basis;
  felt x = 1;
  for (std::uint32_t i = 0; i < F.degree(); ++i) {
    basis.push_back(x);
    x = F.mul(x, F.generator());
  }
  return basis;
}

inline std::vector<Payload> sl_generators(std::uint32_t n, const FieldSpec& F) {
  std::vector<Payload> gens;
  if (n < 2) return gens;
  for (felt b : additive_basis(F)) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Payload m = identity_matrix(n);
        m[i * n + j] = static_cast<std::uint16_t>(b);
        gens.push_back(std::move(m));
      }
  }
  return gens;
}

// All projective representatives (first nonzero coordinate = 1), in
// lexicographic order of the coordinate vector.
inline std::vector<std::vector<felt>> projective_points(std::uint32_t n, const FieldSpec& F) {
  std::vector<std::vector<felt>> pts;
  std::vector<felt> v(n, 0);
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) total *= F.q();
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t rest = code;
    for (std::uint32_t i = 0; i < n; ++i) {
      v[n - 1 - i] = static_cast<felt>(rest % F.q());
      rest /= F.q();
    }
    std::uint32_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] == 1) pts.push_back(v);
  }
  return pts;
}

}  // namespace detail

inline Group build_classical(const FamilySpec& spec, std::uint32_t cap = kDefaultElementCap) {
  spec.validate();
  const std::uint64_t q = spec.q;
  const std::uint32_t n = spec.n;
  u128 expect = order_formula(spec);
  if (expect > cap)
    throw CapExceeded(spec.str() + ": predicted order " + u128_str(expect) + " exceeds cap " +
                      std::to_string(cap));

  if (spec.fam == Family::GL || spec.fam == Family::SL) {
    auto F = std::make_shared<const FieldSpec>(field_of_order(q));
    ElementUniverse u = matrix_universe(n, F);
    std::vector<Payload> gens = detail::sl_generators(n, *F);
    if (spec.fam == Family::GL && q > 2) {
      Payload d = detail::identity_matrix(n);
      d[0] = static_cast<std::uint16_t>(F->generator());
      gens.push_back(std::move(d));
    }
    return detail::closure_escalated(u, gens, expect, cap);
  }

  if (spec.fam == Family::Sp) {
    auto F = std::make_shared<const FieldSpec>(field_of_order(q));
    ElementUniverse u = matrix_universe(n, F);
    FormData J = symplectic_form(n, *F);
    std::vector<Payload> gens;
    for (const auto& v : detail::projective_points(n, *F)) {
      // Jv
      std::vector<felt> jv(n, 0);
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          jv[i] = F->add(jv[i], F->mul(J.coeff[i * n + j], v[j]));
      for (felt lam : detail::additive_basis(*F)) {
        Payload m = detail::identity_matrix(n);
        for (std::uint32_t i = 0; i < n; ++i)
          for (std::uint32_t j = 0; j < n; ++j)
            m[i * n + j] = static_cast<std::uint16_t>(
                F->add(m[i * n + j], F->mul(lam, F->mul(v[i], jv[j]))));
        if (!preserves_form(J, *F, n, m.data()))
          throw Error("symplectic transvection fails form check");
        gens.push_back(std::move(m));
      }
    }
    return detail::closure_escalated(u, gens, expect, cap);
  }

  if (spec.fam == Family::GU || spec.fam == Family::SU) {
    // Inside GL_n(q^2), preserving the identity hermitian form.
    std::uint64_t p;
    unsigned k;
    prime_power_decompose(q, p, k);
    auto F = std::make_shared<const FieldSpec>(
        FieldSpec(static_cast<std::uint32_t>(p), 2 * k));
    ElementUniverse u = matrix_universe(n, F);
    FormData herm = hermitian_form(n);
    auto conj = [&](felt x) { return F->pow(x, q); };

    bool exceptional = (n == 1) || (n == 2 && q <= 3) || (n == 3 && q == 2);
    if (n == 1) {
      // GU_1 = norm-one circle, SU_1 = 1.
      std::vector<Payload> gens;
      if (spec.fam == Family::GU) {
        Payload d(1, static_cast<std::uint16_t>(F->pow(F->generator(), q - 1)));
        gens.push_back(std::move(d));
      }
      return detail::closure_escalated(u, gens, expect, cap);
    }
    if (exceptional) {
      // Filter the ambient GL_n(q^2).
      u128 ambient = order_formula({Family::GL, n, 0, q * q});
      if (ambient > cap)
        throw CapExceeded(spec.str() + ": ambient GL order " + u128_str(ambient) +
                          " exceeds cap");
      Group gl = build_classical({Family::GL, n, 0, q * q}, cap);
      std::vector<Payload> elems;
      for (std::uint32_t id = 0; id < gl.order(); ++id) {
        auto pv = gl.payload(id);
        if (!preserves_form(herm, *F, n, pv.data())) continue;
        if (spec.fam == Family::SU && matrix_det(*F, n, pv.data()) != 1) continue;
        elems.emplace_back(pv.begin(), pv.end());
      }
      if (elems.size() != static_cast<std::size_t>(expect))
        throw Error(spec.str() + ": filtered order " + std::to_string(elems.size()) +
                    " != formula " + u128_str(expect));
      return detail::group_from_elements(u, std::move(elems), cap);
    }
    // Unitary transvections x -> x + lambda h(x,v) v for isotropic v and
    // trace-zero lambda.
    std::vector<felt> trace0;
    for (std::uint64_t x = 1; x < F->q(); ++x)
      if (F->add(static_cast<felt>(x), F->pow(static_cast<felt>(x), q)) == 0)
        trace0.push_back(static_cast<felt>(x));
    // F_p-spanning subset suffices: keep an independent max subset cheaply by
    // just using all of them for small fields.
    std::vector<Payload> gens;
    for (const auto& v : detail::projective_points(n, *F)) {
      felt hv = 0;
      for (std::uint32_t i = 0; i < n; ++i) hv = F->add(hv, F->mul(v[i], conj(v[i])));
      if (hv != 0) continue;  // need isotropic v
      for (felt lam : trace0) {
        Payload m = detail::identity_matrix(n);
        for (std::uint32_t i = 0; i < n; ++i)
          for (std::uint32_t j = 0; j < n; ++j)
            m[i * n + j] = static_cast<std::uint16_t>(
                F->add(m[i * n + j], F->mul(lam, F->mul(v[i], conj(v[j])))));
        if (!preserves_form(herm, *F, n, m.data()))
          throw Error("unitary transvection fails form check");
        gens.push_back(std::move(m));
      }
    }
    if (spec.fam == Family::SU) return detail::closure_escalated(u, gens, expect, cap);
    Payload d = detail::identity_matrix(n);
    d[0] = static_cast<std::uint16_t>(F->pow(F->generator(), q - 1));
    gens.push_back(std::move(d));
    return detail::closure_escalated(u, gens, expect, cap);
  }

  // Orthogonal families.
  auto F = std::make_shared<const FieldSpec>(field_of_order(q));
  ElementUniverse u = matrix_universe(n, F);
  FormData Q = quadratic_form(n, spec.eps, *F);
  if (n % 2 == 0 && upow(q, n) <= (1u << 20)) {
    // Type witness: count quadric zeros.
    std::uint64_t zeros = 0;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) total *= q;
    std::vector<felt> v(n, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      for (std::uint32_t i = 0; i < n; ++i) {
        v[i] = static_cast<felt>(rest % q);
        rest /= q;
      }
      if (quad_eval(Q, *F, v.data()) == 0) ++zeros;
    }
    if (zeros != expected_quadric_zeros(q, n, spec.eps))
      throw Error("quadratic form has wrong type");
  }

  // Reflections r_v = 1 - v (B(v,.)/Q(v)) for every projective v with
  // Q(v) != 0, where B is the polar form of Q.
  std::vector<Payload> reflections;
  for (const auto& v : detail::projective_points(n, *F)) {
    felt qv = quad_eval(Q, *F, v.data());
    if (qv == 0) continue;
    felt iqv = F->inv(qv);
    // w = (U + U^T) v scaled by 1/Q(v)
    std::vector<felt> w(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      felt acc = 0;
      for (std::uint32_t j = 0; j < n; ++j)
        acc = F->add(acc, F->mul(F->add(Q.coeff[i * n + j], Q.coeff[j * n + i]), v[j]));
      w[i] = F->mul(acc, iqv);
    }
    Payload m = detail::identity_matrix(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        m[i * n + j] =
            static_cast<std::uint16_t>(F->sub(m[i * n + j], F->mul(v[i], w[j])));
    if (!preserves_form(Q, *F, n, m.data())) throw Error("reflection fails form check");
    reflections.push_back(std::move(m));
  }

  const bool even_q = (q % 2 == 0);
  const u128 o_order = order_formula({n % 2 == 1 ? Family::GO : Family::O, n, spec.eps, q});

  auto build_full_o = [&]() -> Group {
    try {
      return detail::closure_escalated(u, reflections, o_order, cap);
    } catch (const Error&) {
      // Dieudonne exception O_4^+(2) and any relative: filter the ambient GL.
      u128 ambient = order_formula({Family::GL, n, 0, q});
      if (ambient > cap) throw;
      Group gl = build_classical({Family::GL, n, 0, q}, cap);
      std::vector<Payload> elems;
      for (std::uint32_t id = 0; id < gl.order(); ++id) {
        auto pv = gl.payload(id);
        if (preserves_form(Q, *F, n, pv.data())) elems.emplace_back(pv.begin(), pv.end());
      }
      if (elems.size() != static_cast<std::size_t>(o_order))
        throw Error(spec.str() + ": filtered O order mismatch");
      return detail::group_from_elements(u, std::move(elems), cap);
    }
  };

  if (spec.fam == Family::O || spec.fam == Family::GO ||
      (even_q && spec.fam == Family::SO)) {
    Group o = build_full_o();
    if (o.order() != static_cast<std::uint32_t>(o_order))
      throw Error(spec.str() + ": order mismatch");
    return o;
  }

  if (spec.fam == Family::SO) {
    // q odd: even products of reflections.
    std::vector<Payload> pair_gens;
    const Payload& r0 = reflections.front();
    std::uint16_t buf[64];
    for (std::size_t i = 1; i < reflections.size(); ++i) {
      elem_mul(u, r0.data(), reflections[i].data(), buf);
      pair_gens.emplace_back(buf, buf + u.stride());
    }
    return detail::closure_escalated(u, pair_gens, expect, cap);
  }

  // Omega.
  if (even_q) {
    Group o = build_full_o();
    std::vector<Payload> elems;
    Payload idm = detail::identity_matrix(n);
    for (std::uint32_t id = 0; id < o.order(); ++id) {
      auto pv = o.payload(id);
      // Dickson invariant = rank(g - 1) mod 2.
      std::vector<std::uint16_t> diff(n * n);
      for (std::uint32_t i = 0; i < n * n; ++i)
        diff[i] = static_cast<std::uint16_t>(F->sub(pv[i], idm[i]));
      if (matrix_rank(*F, n, diff.data()) % 2 == 0) elems.emplace_back(pv.begin(), pv.end());
    }
    if (elems.size() != static_cast<std::size_t>(expect))
      throw Error(spec.str() + ": Dickson kernel order mismatch");
    return detail::group_from_elements(u, std::move(elems), cap);
  }
  // q odd: Omega = <g^2 : g in SO>.  Squares lie in the spinor kernel, so the
  // verified index 2 pins the subgroup to exactly that kernel.
  Group so = build_classical({Family::SO, n, spec.eps, q}, cap);
  DynBitset squares(so.order());
  for (std::uint32_t id = 0; id < so.order(); ++id) squares.set(so.mul(id, id));
  std::vector<std::uint32_t> gens;
  Subgroup h = trivial_subgroup(so);
  for (;;) {
    std::uint32_t pick = UINT32_MAX;
    for (std::uint32_t id = 0; id < so.order(); ++id) {
      if (squares.test(id) && !h.mask.test(id)) {
        pick = id;
        break;
      }
    }
    if (pick == UINT32_MAX) break;
    gens.push_back(pick);
    h = subgroup_closure(so, gens);
  }
  if (h.order != static_cast<std::uint32_t>(expect))
    throw Error(spec.str() + ": square subgroup order " + std::to_string(h.order) +
                " != formula " + u128_str(expect));
  return lift_subgroup(so, h, cap).group;
}

}  // namespace ff
