#pragma once
// The unitary group of the Hermitian model: form preservation, the
// anti-Hermitian 2x2 family, explicit stabilizer enumeration of the
// reference line, and orbit closure under a generating set.
//
// Conventions: the form matrix is J = [[0, E], [E, 0]] in 2x2 blocks,
// A is unitary iff A J ct(A) = J, and matrices act on points as column
// vectors, P -> A.P. The reference line l' is x0 = x1 = 0 (the first two
// coordinates of the Hermitian model).

#include <cstdint>
#include <span>
#include <vector>

#include "hsurf/surface.hpp"

namespace hsurf {

struct Mat2 {
  const FieldCtx* F = nullptr;
  std::array<uint32_t, 4> v{};  // row-major element indices

  FieldElem at(int r, int c) const { return {v[2 * r + c], F}; }
  void set(int r, int c, FieldElem e) { v[2 * r + c] = e.v; }
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.v == b.v && a.F == b.F; }
};

struct Mat4 {
  const FieldCtx* F = nullptr;
  std::array<uint32_t, 16> v{};

  FieldElem at(int r, int c) const { return {v[4 * r + c], F}; }
  void set(int r, int c, FieldElem e) { v[4 * r + c] = e.v; }
  friend bool operator==(const Mat4& a, const Mat4& b) { return a.v == b.v && a.F == b.F; }
};

Mat2 mat2_identity(const FieldCtx& F);
Mat4 mat4_identity(const FieldCtx& F);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat2 operator-(const Mat2& a);
// Conjugate transpose: Frobenius entrywise, then transpose.
Mat2 conjugate_transpose(const Mat2& a);
Mat4 conjugate_transpose(const Mat4& a);
FieldElem det(const Mat2& a);
Mat2 inverse(const Mat2& a);  // DivisionByZero when singular
Mat4 inverse(const Mat4& a);  // Gauss-Jordan; DivisionByZero when singular
Mat4 from_blocks(const Mat2& a1, const Mat2& a2, const Mat2& a3, const Mat2& a4);

ProjPoint transform_point(const Mat4& a, const ProjPoint& p);
ProjLine transform_line(const Mat4& a, const ProjLine& l);

class HermitianCtx {
 public:
  explicit HermitianCtx(const FieldCtx& F);  // quadratic-level context

  const FieldCtx& field() const { return *F_; }
  const Mat4& J() const { return J_; }
  const ProjLine& ell_prime() const { return ell_; }
  // F_{q^2}-points of the Hermitian model surface, sorted; computed on
  // demand by a full P^3 scan, so only sensible at small q.
  std::vector<ProjPoint> surface_points() const;

 private:
  const FieldCtx* F_;
  Mat4 J_;
  ProjLine ell_;
};

// A J ct(A) = J.
bool is_unitary(const HermitianCtx& H, const Mat4& a);

// All X with ct(X) = -X; exactly q^4 of them, in index order.
std::vector<Mat2> anti_hermitian_enum(const HermitianCtx& H);

// Every unitary matrix fixing l': A = [[A1, 0], [A3, A4]] with
// A4 in GL2(q^2), A1 = inverse(ct(A4)), A3 = X * A1 over anti-Hermitian X.
// Cardinality q^6 (q^4 - 1)(q^2 - 1). Full enumeration for q <= 3 only;
// throws TooLarge beyond.
std::vector<Mat4> stabilizer_enum(const HermitianCtx& H);

// Same iteration without materializing; every member is still checked
// unitary and line-fixing. Allowed through q = 4; throws TooLarge beyond.
uint64_t stabilizer_count_streaming(const HermitianCtx& H);

// (q+1) q^6 (q^4-1)(q^3+1)(q^2-1); throws TooLarge on uint64 overflow.
uint64_t gu_order(uint64_t q);

// Parabolic generators plus the Weyl element J: lower and upper unipotent
// blocks over the anti-Hermitian family and all block-diagonal members.
std::vector<Mat4> default_generators(const HermitianCtx& H);

// Breadth-first closure of {l'} under the generator action on canonical
// lines; sorted by key. Throws NonUnitaryGenerator.
std::vector<ProjLine> line_orbit(const HermitianCtx& H, std::span<const Mat4> generators);

// Group checks on an enumerated matrix set.
bool group_closed_exhaustive(std::span<const Mat4> g);
bool group_closed_sampled(std::span<const Mat4> g, size_t pairs, uint64_t seed);
bool group_contains_inverses(std::span<const Mat4> g);

}  // namespace hsurf
