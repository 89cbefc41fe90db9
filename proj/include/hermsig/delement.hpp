// Arithmetic in the division rings D that appear at the bottom of the Morita chain:
// the base field itself, a quaternion algebra (a,b)_F with i^2 = a, j^2 = b, k = ij,
// or a quadratic extension K = F(sqrt(delta)). Elements carry their ring descriptor.
#pragma once

#include <optional>
#include <vector>

#include "hermsig/errors.hpp"
#include "hermsig/fields.hpp"

namespace hermsig {

enum class DivisionKind { split, quaternion, quadratic_ext };

struct DivisionRing {
  BaseField field;
  DivisionKind kind = DivisionKind::split;
  // quaternion parameters (both nonzero) or the extension discriminant (non-square)
  std::optional<FieldElement> a, b, delta;

  static DivisionRing split(const BaseField& f) { return {f, DivisionKind::split, {}, {}, {}}; }

  static DivisionRing quaternion(const FieldElement& a, const FieldElement& b) {
    if (a.field != b.field) fail(errc::algebra_mismatch, "quaternion parameters over different fields");
    if (a.is_zero() || b.is_zero()) fail(errc::parse_error, "quaternion parameters must be nonzero");
    return {a.field, DivisionKind::quaternion, a, b, {}};
  }

  static DivisionRing quadratic_ext(const FieldElement& delta) {
    if (delta.is_zero()) fail(errc::parse_error, "extension discriminant must be nonzero");
    if (is_square_in_field(delta))
      fail(errc::parse_error, "extension discriminant must not be a square in F");
    return {delta.field, DivisionKind::quadratic_ext, {}, {}, delta};
  }

  std::size_t coord_count() const {
    switch (kind) {
      case DivisionKind::split: return 1;
      case DivisionKind::quaternion: return 4;
      case DivisionKind::quadratic_ext: return 2;
    }
    return 0;
  }
  // degree as a central simple algebra over its centre
  std::size_t degree() const { return kind == DivisionKind::quaternion ? 2 : 1; }
  std::size_t dim_over_f() const {
    switch (kind) {
      case DivisionKind::split: return 1;
      case DivisionKind::quaternion: return 4;
      case DivisionKind::quadratic_ext: return 2;
    }
    return 0;
  }

  friend bool operator==(const DivisionRing& x, const DivisionRing& y) {
    if (x.field != y.field || x.kind != y.kind) return false;
    auto eq = [](const std::optional<FieldElement>& p, const std::optional<FieldElement>& q) {
      return p.has_value() == q.has_value() && (!p || *p == *q);
    };
    return eq(x.a, y.a) && eq(x.b, y.b) && eq(x.delta, y.delta);
  }
  friend bool operator!=(const DivisionRing& x, const DivisionRing& y) { return !(x == y); }
};

struct DElement {
  DivisionRing ring;
  // split: (x); quadratic_ext: (x0, x1) for x0 + x1*sqrt(delta); quaternion: (w, x, y, z)
  std::vector<FieldElement> c;

  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }
  bool is_scalar() const {
    for (std::size_t i = 1; i < c.size(); ++i)
      if (!c[i].is_zero()) return false;
    return true;
  }
  const FieldElement& scalar_part() const { return c[0]; }

  FieldElement as_field() const {
    if (!is_scalar()) fail(errc::not_symmetric, "element does not lie in the base field");
    return c[0];
  }

  friend bool operator==(const DElement& x, const DElement& y) {
    return x.ring == y.ring && x.c == y.c;
  }

  friend DElement operator+(const DElement& x, const DElement& y) {
    check_same(x, y);
    DElement out = x;
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = out.c[i] + y.c[i];
    return out;
  }
  friend DElement operator-(const DElement& x, const DElement& y) {
    check_same(x, y);
    DElement out = x;
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = out.c[i] - y.c[i];
    return out;
  }
  friend DElement operator-(const DElement& x) {
    DElement out = x;
    for (auto& v : out.c) v = -v;
    return out;
  }

  friend DElement operator*(const DElement& x, const DElement& y) {
    check_same(x, y);
    switch (x.ring.kind) {
      case DivisionKind::split:
        return {x.ring, {x.c[0] * y.c[0]}};
      case DivisionKind::quadratic_ext: {
        const FieldElement& delta = *x.ring.delta;
        return {x.ring,
                {x.c[0] * y.c[0] + delta * x.c[1] * y.c[1], x.c[0] * y.c[1] + x.c[1] * y.c[0]}};
      }
      case DivisionKind::quaternion: {
        const FieldElement &a = *x.ring.a, &b = *x.ring.b;
        const FieldElement &w1 = x.c[0], &x1 = x.c[1], &y1 = x.c[2], &z1 = x.c[3];
        const FieldElement &w2 = y.c[0], &x2 = y.c[1], &y2 = y.c[2], &z2 = y.c[3];
        FieldElement w = w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2;
        FieldElement xi = w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2;
        FieldElement yj = w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2;
        FieldElement zk = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2;
        return {x.ring, {w, xi, yj, zk}};
      }
    }
    fail(errc::parse_error, "unreachable");
  }

  DElement inverse() const;

 private:
  static void check_same(const DElement& x, const DElement& y) {
    if (x.ring != y.ring) fail(errc::algebra_mismatch, "elements of different division rings");
  }
};

inline DElement d_zero(const DivisionRing& r) {
  return {r, std::vector<FieldElement>(r.coord_count(), fe_zero(r.field))};
}
inline DElement d_one(const DivisionRing& r) {
  DElement e = d_zero(r);
  e.c[0] = fe_one(r.field);
  return e;
}
inline DElement d_from_field(const DivisionRing& r, const FieldElement& v) {
  DElement e = d_zero(r);
  e.c[0] = v;
  return e;
}
// basis element 1, i, j, k (quaternion) or 1, sqrt(delta) (quadratic extension)
inline DElement d_gen(const DivisionRing& r, std::size_t idx) {
  if (idx >= r.coord_count()) fail(errc::dimension_mismatch, "basis index out of range");
  DElement e = d_zero(r);
  e.c[idx] = fe_one(r.field);
  return e;
}

// Standard conjugation: identity on F, x0 - x1*sqrt(delta) on K, w - xi - yj - zk on (a,b)_F.
inline DElement d_conj(const DElement& x) {
  DElement out = x;
  for (std::size_t i = 1; i < out.c.size(); ++i) out.c[i] = -out.c[i];
  return out;
}

// Reduced norm to F (quaternion) / field norm N_{K/F} (quadratic ext) / identity (split).
inline FieldElement d_norm(const DElement& x) {
  switch (x.ring.kind) {
    case DivisionKind::split: return x.c[0] * x.c[0];
    case DivisionKind::quadratic_ext: return x.c[0] * x.c[0] - *x.ring.delta * x.c[1] * x.c[1];
    case DivisionKind::quaternion: {
      const FieldElement &a = *x.ring.a, &b = *x.ring.b;
      return x.c[0] * x.c[0] - a * x.c[1] * x.c[1] - b * x.c[2] * x.c[2] + a * b * x.c[3] * x.c[3];
    }
  }
  fail(errc::parse_error, "unreachable");
}

inline DElement DElement::inverse() const {
  if (ring.kind == DivisionKind::split) {
    if (c[0].is_zero()) fail(errc::not_invertible, "division by zero");
    return {ring, {c[0].inverse()}};
  }
  FieldElement n = d_norm(*this);
  if (n.is_zero()) fail(errc::not_invertible, "element has reduced norm zero");
  DElement conj = d_conj(*this);
  FieldElement ninv = n.inverse();
  for (auto& v : conj.c) v = v * ninv;
  return conj;
}

// Reduced trace of D as a central simple algebra over its centre: identity for D = F
// and D = K, twice the scalar part for quaternions.
inline DElement reduced_trace_d(const DElement& x) {
  if (x.ring.kind != DivisionKind::quaternion) return x;
  return d_from_field(x.ring, x.c[0] + x.c[0]);
}

// F-valued trace: Trd for first-kind rings, the K/F trace x + conj(x) for K.
inline FieldElement field_trace(const DElement& x) {
  switch (x.ring.kind) {
    case DivisionKind::split: return x.c[0];
    case DivisionKind::quaternion: return x.c[0] + x.c[0];
    case DivisionKind::quadratic_ext: return x.c[0] + x.c[0];
  }
  fail(errc::parse_error, "unreachable");
}

enum class ThetaKind { identity, conjugation, twisted_conjugation };

// The involution theta on D in canonical position. TwistedConjugation is
// Int(s) o conjugation for a fixed pure quaternion s and is orthogonal.
struct CanonicalTheta {
  ThetaKind kind = ThetaKind::identity;
  std::optional<DElement> s;

  friend bool operator==(const CanonicalTheta& x, const CanonicalTheta& y) {
    return x.kind == y.kind && x.s.has_value() == y.s.has_value() && (!x.s || *x.s == *y.s);
  }
};

inline void validate_theta(const DivisionRing& r, const CanonicalTheta& th) {
  switch (th.kind) {
    case ThetaKind::identity:
      if (r.kind != DivisionKind::split)
        fail(errc::involution_axiom_violation, "identity involution requires a split ring");
      break;
    case ThetaKind::conjugation:
      if (r.kind == DivisionKind::split)
        fail(errc::involution_axiom_violation, "conjugation requires a nontrivial ring");
      break;
    case ThetaKind::twisted_conjugation: {
      if (r.kind != DivisionKind::quaternion)
        fail(errc::involution_axiom_violation, "twisted conjugation requires a quaternion ring");
      if (!th.s) fail(errc::involution_axiom_violation, "twisted conjugation needs a pivot s");
      const DElement& s = *th.s;
      if (s.ring != r) fail(errc::algebra_mismatch, "pivot lives in a different ring");
      if (!s.c[0].is_zero() || s.is_zero())
        fail(errc::involution_axiom_violation, "pivot must be a nonzero pure quaternion");
      if (d_norm(s).is_zero()) fail(errc::not_invertible, "pivot has reduced norm zero");
      break;
    }
  }
}

inline DElement apply_theta(const CanonicalTheta& th, const DElement& x) {
  switch (th.kind) {
    case ThetaKind::identity: return x;
    case ThetaKind::conjugation: return d_conj(x);
    case ThetaKind::twisted_conjugation: return *th.s * d_conj(x) * th.s->inverse();
  }
  fail(errc::parse_error, "unreachable");
}

// Involution type of theta itself (as an involution on D).
inline bool theta_is_orthogonal(const DivisionRing& r, const CanonicalTheta& th) {
  switch (th.kind) {
    case ThetaKind::identity: return true;
    case ThetaKind::twisted_conjugation: return true;
    case ThetaKind::conjugation: return r.kind != DivisionKind::quaternion ? true : false;
  }
  return true;
}

}  // namespace hermsig
