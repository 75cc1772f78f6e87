#pragma once
// Points, lines and hyperplanes of P^3 over a field context, all kept in a
// unique canonical form so equality is plain comparison:
//   - points and hyperplane coefficient vectors scale their first nonzero
//     coordinate to 1;
//   - lines are the reduced row echelon form of a 2x4 spanning basis, plus
//     the RREF basis of the dual pencil (the hyperplanes through the line).
//
// Level::base means coordinates in F_q (the Frobenius-fixed subfield of the
// context); Level::quadratic means the context's full field.

#include <array>
#include <cstdint>
#include <vector>

#include "hsurf/gf.hpp"

namespace hsurf {

enum class Level { base, quadratic };

using PointKey = std::array<uint32_t, 4>;
using LineKey = std::array<uint32_t, 8>;

struct KeyHash {
  template <size_t N>
  size_t operator()(const std::array<uint32_t, N>& k) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t w : k) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

struct ProjPoint {
  std::array<FieldElem, 4> x;

  const FieldCtx& field() const { return *x[0].F; }
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x == b.x; }
};

struct Hyperplane {
  std::array<FieldElem, 4> c;

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) { return a.c == b.c; }
};

struct ProjLine {
  std::array<FieldElem, 8> basis;  // RREF rows, row-major
  std::array<FieldElem, 8> dual;   // RREF basis of the annihilator
  bool base_rational = false;

  const FieldCtx& field() const { return *basis[0].F; }
  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.basis == b.basis; }
};

PointKey key(const ProjPoint& p);
LineKey key(const ProjLine& l);
PointKey key(const Hyperplane& h);
inline bool operator<(const ProjPoint& a, const ProjPoint& b) { return key(a) < key(b); }
inline bool operator<(const ProjLine& a, const ProjLine& b) { return key(a) < key(b); }

// Scales by the inverse of the first nonzero coordinate. Throws ZeroVector.
ProjPoint normalize_point(std::array<FieldElem, 4> raw);
Hyperplane make_hyperplane(std::array<FieldElem, 4> coeffs);

FieldElem eval(const Hyperplane& h, const ProjPoint& p);
inline bool contains(const Hyperplane& h, const ProjPoint& p) { return eval(h, p).is_zero(); }

// Canonical line spanned by two independent rows (not necessarily points).
// Throws EqualPoints when the rows are dependent.
ProjLine make_line(std::array<FieldElem, 4> r0, std::array<FieldElem, 4> r1);
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);

bool contains(const ProjLine& l, const ProjPoint& p);

// Exactly |F|+1 (resp. q+1) normalized points, sorted by key.
// Throws NotBaseRational for Level::base on a non-base-rational line.
std::vector<ProjPoint> points_on_line(const ProjLine& l, Level level);

bool is_base_rational(const ProjPoint& p);
bool is_base_rational(const Hyperplane& h);
bool is_base_rational(const ProjLine& l);

// The pencil of hyperplanes through a line: members are lam*rows[0] + mu*rows[1]
// over (lam:mu) in P^1, each hyperplane through the line appearing exactly once.
struct PencilParam {
  FieldElem lam, mu;
};

struct LinePencil {
  std::array<std::array<FieldElem, 4>, 2> rows;

  Hyperplane member(FieldElem lam, FieldElem mu) const;
  Hyperplane member(const PencilParam& t) const { return member(t.lam, t.mu); }
  // (0:1), then (1:t) with t ascending; |F|+1 members.
  std::vector<PencilParam> params() const;
};

LinePencil pencil_through_line(const ProjLine& l);

ProjPoint embed_point(const Embedding& e, const ProjPoint& p);
Hyperplane embed_hyperplane(const Embedding& e, const Hyperplane& h);
ProjLine embed_line(const Embedding& e, const ProjLine& l);

// All normalized points of P^3 over the context field, sorted by key.
std::vector<ProjPoint> all_points_p3(const FieldCtx& F);

// Spanning rows of a hyperplane (kernel of its coefficient row).
std::array<std::array<FieldElem, 4>, 3> hyperplane_basis(const Hyperplane& h);

// Visit normalized representatives of P^2 over F: (0,0,1), (0,1,t), (1,s,t).
template <class Fn>
void for_each_p2(const FieldCtx& F, Fn&& fn) {
  const FieldElem zero = F.zero(), one = F.one();
  fn(zero, zero, one);
  for (uint32_t t = 0; t < F.size(); ++t) fn(zero, one, F.elem(t));
  for (uint32_t s = 0; s < F.size(); ++s)
    for (uint32_t t = 0; t < F.size(); ++t) fn(one, F.elem(s), F.elem(t));
}

}  // namespace hsurf
