// Base fields Q and Q(sqrt(d)), their real orderings, exact sign determination and
// Sylvester signatures of symmetric matrices. Everything is exact; real closures are
// never materialized and every sign decision reduces to integer comparisons.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hermsig/errors.hpp"
#include "hermsig/matrix.hpp"
#include "hermsig/rational.hpp"

namespace hermsig {

enum class FieldKind { rationals, real_quadratic };

struct BaseField {
  FieldKind kind = FieldKind::rationals;
  std::int64_t d = 0;  // square-free, > 1; meaningful only for real_quadratic

  static BaseField Q() { return BaseField{}; }

  static BaseField Qsqrt(std::int64_t d) {
    if (d <= 1) fail(errc::parse_error, "quadratic field parameter must be > 1");
    if (d > 4000000000000LL) fail(errc::parse_error, "quadratic field parameter too large");
    for (std::int64_t p = 2; p * p <= d; ++p) {
      if (d % (p * p) == 0) fail(errc::parse_error, "quadratic field parameter must be square-free");
    }
    return BaseField{FieldKind::real_quadratic, d};
  }

  friend bool operator==(const BaseField& a, const BaseField& b) {
    return a.kind == b.kind && (a.kind == FieldKind::rationals || a.d == b.d);
  }
  friend bool operator!=(const BaseField& a, const BaseField& b) { return !(a == b); }
};

// index 0: sqrt(d) -> +sqrt(d); index 1: sqrt(d) -> -sqrt(d). Q has only index 0.
struct Ordering {
  int index = 0;
  friend bool operator==(const Ordering& a, const Ordering& b) { return a.index == b.index; }
};

inline std::vector<Ordering> orderings(const BaseField& f) {
  if (f.kind == FieldKind::rationals) return {Ordering{0}};
  return {Ordering{0}, Ordering{1}};
}

// a + b*sqrt(d); b stays 0 over Q.
struct FieldElement {
  BaseField field;
  Rational a;
  Rational b;

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  FieldElement conj_sqrt() const { return {field, a, -b}; }  // a - b*sqrt(d)

  // a^2 - d*b^2; zero only for the zero element since d is not a square.
  Rational norm() const {
    if (field.kind == FieldKind::rationals) return a * a;
    return a * a - Rational(field.d) * b * b;
  }

  FieldElement inverse() const {
    if (is_zero()) fail(errc::not_invertible, "division by zero field element");
    if (field.kind == FieldKind::rationals) return {field, 1 / a, Rational(0)};
    Rational n = norm();
    return {field, a / n, -b / n};
  }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    return {x.field, x.a + y.a, x.b + y.b};
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    return {x.field, x.a - y.a, x.b - y.b};
  }
  friend FieldElement operator-(const FieldElement& x) { return {x.field, -x.a, -x.b}; }
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    if (x.field.kind == FieldKind::rationals) return {x.field, x.a * y.a, Rational(0)};
    return {x.field, x.a * y.a + Rational(x.field.d) * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * y.inverse();
  }
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.field == y.field && x.a == y.a && x.b == y.b;
  }

 private:
  static void check_same(const FieldElement& x, const FieldElement& y) {
    if (x.field != y.field) fail(errc::algebra_mismatch, "field elements over different base fields");
  }
};

inline FieldElement fe(const BaseField& f, const Rational& a, const Rational& b = Rational(0)) {
  if (f.kind == FieldKind::rationals && b != 0)
    fail(errc::parse_error, "sqrt coordinate must vanish over Q");
  return {f, a, b};
}
inline FieldElement fe_zero(const BaseField& f) { return fe(f, Rational(0)); }
inline FieldElement fe_one(const BaseField& f) { return fe(f, Rational(1)); }
inline FieldElement fe_int(const BaseField& f, long v) { return fe(f, Rational(v)); }

// Exact sign of the image of a + b*sqrt(d) under the real embedding P.
inline int sign_at(const FieldElement& x, Ordering P) {
  int sa = sign_of(x.a);
  if (x.field.kind == FieldKind::rationals || x.b == 0) return sa;
  int sb = sign_of(x.b) * (P.index == 0 ? 1 : -1);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with d*b^2 (equality would force d to be a square).
  Rational lhs = x.a * x.a;
  Rational rhs = Rational(x.field.d) * x.b * x.b;
  return lhs > rhs ? sa : sb;
}

inline bool is_positive_at(const FieldElement& x, Ordering P) { return sign_at(x, P) > 0; }

// Whether z is a square in its base field (needed to validate quadratic extensions).
inline bool is_square_in_field(const FieldElement& z) {
  if (z.field.kind == FieldKind::rationals) return is_square_rational(z.a);
  const Rational d(z.field.d);
  if (z.b == 0) return is_square_rational(z.a) || is_square_rational(z.a / d);
  Rational n = z.a * z.a - d * z.b * z.b;
  if (!is_square_rational(n)) return false;
  Rational s = sqrt_rational(n);
  return is_square_rational((z.a + s) / 2) || is_square_rational((z.a - s) / 2);
}

struct SymmetricDiagonalization {
  Matrix<FieldElement> transform;      // G with G^t M G diagonal
  std::vector<FieldElement> diagonal;  // nonzero entries first, zeros trailing
};

// Symmetric Gaussian elimination by congruence. Pivot: first nonzero diagonal entry;
// if the active diagonal is zero but the block is not, add column j to column i for
// the lowest (i, j) with M_ij != 0 to create one.
inline SymmetricDiagonalization symmetric_diagonalize(const Matrix<FieldElement>& m) {
  if (!m.square()) fail(errc::dimension_mismatch, "diagonalize non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {Matrix<FieldElement>(), {}};
  const FieldElement zero = fe_zero(m(0, 0).field);
  const FieldElement one = fe_one(m(0, 0).field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(m(i, j) == m(j, i))) fail(errc::not_hermitian, "matrix is not symmetric");

  Matrix<FieldElement> w = m;
  Matrix<FieldElement> g = identity_matrix(n, one, zero);

  auto add_col = [&](std::size_t dst, std::size_t src, const FieldElement& c) {
    // column dst += column src * c, applied congruently to w and recorded in g
    for (std::size_t r = 0; r < n; ++r) g(r, dst) = g(r, dst) + g(r, src) * c;
    for (std::size_t r = 0; r < n; ++r) w(r, dst) = w(r, dst) + w(r, src) * c;
    for (std::size_t cidx = 0; cidx < n; ++cidx) w(dst, cidx) = w(dst, cidx) + c * w(src, cidx);
  };
  auto swap_basis = [&](std::size_t a, std::size_t b) {
    g.swap_cols(a, b);
    w.swap_cols(a, b);
    w.swap_rows(a, b);
  };

  std::size_t p = 0;
  for (; p < n; ++p) {
    std::size_t pivot = n;
    for (std::size_t q = p; q < n && pivot == n; ++q)
      if (!w(q, q).is_zero()) pivot = q;
    if (pivot == n) {
      bool created = false;
      for (std::size_t i = p; i < n && !created; ++i)
        for (std::size_t j = i + 1; j < n && !created; ++j)
          if (!w(i, j).is_zero()) {
            add_col(i, j, one);  // new diagonal entry 2*M_ij
            pivot = i;
            created = true;
          }
      if (!created) break;  // trailing block is identically zero
    }
    swap_basis(p, pivot);
    const FieldElement pinv = w(p, p).inverse();
    for (std::size_t q = p + 1; q < n; ++q) {
      if (w(p, q).is_zero()) continue;
      add_col(q, p, -(pinv * w(p, q)));
    }
  }

  std::vector<FieldElement> diag;
  diag.reserve(n);
  for (std::size_t i = 0; i < n; ++i) diag.push_back(w(i, i));
  return {g, diag};
}

// Sylvester signature of a symmetric matrix at the ordering P.
inline int symmetric_signature(const Matrix<FieldElement>& m, Ordering P) {
  auto d = symmetric_diagonalize(m);
  int sig = 0;
  for (const auto& v : d.diagonal) sig += sign_at(v, P);
  return sig;
}

inline int matrix_rank_symmetric(const Matrix<FieldElement>& m) {
  auto d = symmetric_diagonalize(m);
  int r = 0;
  for (const auto& v : d.diagonal)
    if (!v.is_zero()) ++r;
  return r;
}

}  // namespace hermsig
