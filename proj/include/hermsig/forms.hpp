// Hermitian forms as Gram matrices: quadratic forms over F (Pfister forms, Harrison
// sets), epsilon-hermitian forms over (D, theta), and hermitian forms over (A, sigma)
// stored blockwise. The central routine is the exact congruence diagonalization
// diag(u_1, ..., u_k, 0, ..., 0); in the split symplectic corner (F, id, -1) the
// "diagonal" entries are invertible skew 2x2 blocks.
#pragma once

#include <cstddef>
#include <vector>

#include "hermsig/algebras.hpp"
#include "hermsig/delement.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/fields.hpp"
#include "hermsig/matrix.hpp"

namespace hermsig {

// -------------------------------------------------------------------------
// Quadratic forms over F and Harrison sets

struct QuadraticFormF {
  BaseField field;
  std::vector<FieldElement> coeffs;  // diagonal representation

  std::size_t dim() const { return coeffs.size(); }
};

inline QuadraticFormF quadratic_form(const BaseField& f, std::vector<FieldElement> coeffs) {
  for (const auto& c : coeffs)
    if (c.field != f) fail(errc::algebra_mismatch, "coefficient over a different field");
  return {f, std::move(coeffs)};
}

inline int quadratic_signature(const QuadraticFormF& q, Ordering P) {
  int s = 0;
  for (const auto& c : q.coeffs) s += sign_at(c, P);
  return s;
}

// <<b_1, ..., b_t>> = <1, b_1> (x) ... (x) <1, b_t>, expanded in bitmask order:
// the entry for mask m is the product of the b_i with bit i set.
inline QuadraticFormF pfister(const std::vector<FieldElement>& bs) {
  if (bs.empty()) fail(errc::zero_coefficient, "empty Pfister form");
  const BaseField f = bs.front().field;
  for (const auto& b : bs) {
    if (b.field != f) fail(errc::algebra_mismatch, "mixed base fields");
    if (b.is_zero()) fail(errc::zero_coefficient, "Pfister coefficient must be nonzero");
  }
  std::vector<FieldElement> coeffs;
  coeffs.reserve(std::size_t(1) << bs.size());
  for (std::size_t mask = 0; mask < (std::size_t(1) << bs.size()); ++mask) {
    FieldElement prod = fe_one(f);
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (mask & (std::size_t(1) << i)) prod = prod * bs[i];
    coeffs.push_back(prod);
  }
  return {f, std::move(coeffs)};
}

struct HarrisonSet {
  std::vector<FieldElement> generators;
  std::vector<Ordering> members;

  bool contains(Ordering P) const {
    for (const auto& q : members)
      if (q == P) return true;
    return false;
  }
};

inline HarrisonSet harrison(const std::vector<FieldElement>& bs) {
  if (bs.empty()) fail(errc::zero_coefficient, "empty Harrison set description");
  const BaseField f = bs.front().field;
  for (const auto& b : bs) {
    if (b.field != f) fail(errc::algebra_mismatch, "mixed base fields");
    if (b.is_zero()) fail(errc::zero_coefficient, "Harrison generator must be nonzero");
  }
  HarrisonSet h{bs, {}};
  for (Ordering P : orderings(f)) {
    bool all = true;
    for (const auto& b : bs) all = all && sign_at(b, P) > 0;
    if (all) h.members.push_back(P);
  }
  return h;
}

// -------------------------------------------------------------------------
// Division-level forms and their diagonalization

struct DivisionContext {
  DivisionRing ring;
  CanonicalTheta theta;
  int epsilon = 1;

  bool skew_corner() const {
    return ring.kind == DivisionKind::split && theta.kind == ThetaKind::identity && epsilon == -1;
  }
  friend bool operator==(const DivisionContext& x, const DivisionContext& y) {
    return x.ring == y.ring && x.theta == y.theta && x.epsilon == y.epsilon;
  }
};

struct DivisionForm {
  DivisionContext ctx;
  Matrix<DElement> gram;

  std::size_t dim() const { return gram.rows(); }
};

inline void validate_division_form(const DivisionForm& f) {
  if (!f.gram.square()) fail(errc::dimension_mismatch, "Gram matrix must be square");
  Matrix<DElement> t = theta_transpose(f.ctx.theta, f.gram);
  if (!(t == (f.ctx.epsilon == 1 ? f.gram : -f.gram)))
    fail(errc::not_hermitian, "Gram matrix is not epsilon-hermitian for theta");
}

inline DivisionForm division_form(const DivisionContext& ctx, const Matrix<DElement>& gram) {
  DivisionForm f{ctx, gram};
  validate_division_form(f);
  return f;
}

inline DivisionForm division_diag(const DivisionContext& ctx, const std::vector<DElement>& ds) {
  Matrix<DElement> gram(ds.size(), ds.size(), d_zero(ctx.ring));
  for (std::size_t i = 0; i < ds.size(); ++i) gram(i, i) = ds[i];
  return division_form(ctx, gram);
}

struct HermitianDiagonalization {
  Matrix<DElement> transform;             // G with theta(G)^t H G = diag(entries, 0...0)
  std::vector<Matrix<DElement>> entries;  // 1x1 blocks; 2x2 skew blocks in the corner case
  std::size_t zero_count = 0;             // trailing zero columns (counted over D)
  bool block2 = false;

  std::size_t rank() const { return entries.size() * (block2 ? 2 : 1); }

  // the diagonalized Gram, including trailing zeros
  Matrix<DElement> diagonal_gram(const DivisionRing& ring) const {
    std::size_t n = rank() + zero_count;
    Matrix<DElement> out(n, n, d_zero(ring));
    std::size_t at = 0;
    for (const auto& e : entries) {
      for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) out(at + i, at + j) = e(i, j);
      at += e.rows();
    }
    return out;
  }
};

namespace detail {

inline HermitianDiagonalization diagonalize_skew_split(const DivisionForm& f) {
  const DivisionRing& ring = f.ctx.ring;
  const std::size_t n = f.gram.rows();
  Matrix<DElement> w = f.gram;
  Matrix<DElement> g = identity_matrix(n, d_one(ring), d_zero(ring));

  auto add_col = [&](std::size_t dst, std::size_t src, const DElement& c) {
    for (std::size_t r = 0; r < n; ++r) g(r, dst) = g(r, dst) + g(r, src) * c;
    for (std::size_t r = 0; r < n; ++r) w(r, dst) = w(r, dst) + w(r, src) * c;
    for (std::size_t j = 0; j < n; ++j) w(dst, j) = w(dst, j) + c * w(src, j);
  };
  auto swap_basis = [&](std::size_t a, std::size_t b) {
    g.swap_cols(a, b);
    w.swap_cols(a, b);
    w.swap_rows(a, b);
  };

  HermitianDiagonalization out;
  out.block2 = true;
  std::size_t p = 0;
  while (p + 1 < n) {
    std::size_t pi = n, pj = n;
    for (std::size_t i = p; i < n && pi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!w(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) break;
    swap_basis(p, pi);
    swap_basis(p + 1, pj);
    const DElement pinv = w(p, p + 1).inverse();
    for (std::size_t q = p + 2; q < n; ++q) {
      if (!w(p + 1, q).is_zero()) add_col(q, p, w(p + 1, q) * pinv);
      if (!w(p, q).is_zero()) add_col(q, p + 1, -(w(p, q) * pinv));
    }
    Matrix<DElement> block(2, 2, d_zero(ring));
    block(0, 1) = w(p, p + 1);
    block(1, 0) = w(p + 1, p);
    out.entries.push_back(block);
    p += 2;
  }
  out.zero_count = n - p;
  out.transform = g;
  return out;
}

}  // namespace detail

// theta(G)^t H G = diag(u_1, ..., u_k, 0, ..., 0) exactly, u_i invertible in
// Sym_eps(D, theta). Pivots: first nonzero diagonal entry of the active block; when
// the active diagonal vanishes, the lowest off-diagonal pair (i, j) is repaired with
// the first generator d in (1, i, j, k) making e_i + e_j d anisotropic.
inline HermitianDiagonalization diagonalize(const DivisionForm& f) {
  validate_division_form(f);
  if (f.ctx.skew_corner()) return detail::diagonalize_skew_split(f);

  const DivisionRing& ring = f.ctx.ring;
  const CanonicalTheta& th = f.ctx.theta;
  const int eps = f.ctx.epsilon;
  const std::size_t n = f.gram.rows();
  Matrix<DElement> w = f.gram;
  Matrix<DElement> g = identity_matrix(n, d_one(ring), d_zero(ring));

  auto add_col = [&](std::size_t dst, std::size_t src, const DElement& c) {
    const DElement tc = apply_theta(th, c);
    for (std::size_t r = 0; r < n; ++r) g(r, dst) = g(r, dst) + g(r, src) * c;
    for (std::size_t r = 0; r < n; ++r) w(r, dst) = w(r, dst) + w(r, src) * c;
    for (std::size_t j = 0; j < n; ++j) w(dst, j) = w(dst, j) + tc * w(src, j);
  };
  auto swap_basis = [&](std::size_t a, std::size_t b) {
    g.swap_cols(a, b);
    w.swap_cols(a, b);
    w.swap_rows(a, b);
  };

  std::vector<DElement> gens;
  for (std::size_t gi = 0; gi < ring.coord_count(); ++gi) gens.push_back(d_gen(ring, gi));

  HermitianDiagonalization out;
  std::size_t p = 0;
  for (; p < n; ++p) {
    std::size_t pivot = n;
    for (std::size_t q = p; q < n && pivot == n; ++q)
      if (!w(q, q).is_zero()) pivot = q;
    if (pivot == n) {
      std::size_t oi = n, oj = n;
      for (std::size_t i = p; i < n && oi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!w(i, j).is_zero()) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == n) break;  // only the zero block remains
      bool created = false;
      for (const auto& d : gens) {
        // h(e_i + e_j d, e_i + e_j d) = t + eps*theta(t) with t = H_ij d
        DElement t = w(oi, oj) * d;
        DElement tt = apply_theta(th, t);
        if (eps == -1) tt = -tt;
        if (!(t + tt).is_zero()) {
          add_col(oi, oj, d);
          pivot = oi;
          created = true;
          break;
        }
      }
      if (!created)
        fail(errc::not_hermitian, "no anisotropic vector exists outside the skew corner");
    }
    swap_basis(p, pivot);
    const DElement uinv = w(p, p).inverse();
    for (std::size_t q = p + 1; q < n; ++q) {
      if (w(p, q).is_zero()) continue;
      add_col(q, p, -(uinv * w(p, q)));
    }
    out.entries.push_back(Matrix<DElement>(1, 1, w(p, p)));
  }
  out.zero_count = n - p;
  out.transform = g;
  return out;
}

// -------------------------------------------------------------------------
// Hermitian forms over (A, sigma)

// Gram matrix of a k-dimensional epsilon-hermitian form over (A, sigma), stored as a
// (k*ell) x (k*ell) matrix over D whose ell x ell blocks are the A-entries.
struct HermitianForm {
  Algebra algebra;
  std::size_t dim = 0;
  Matrix<DElement> gram;
  int epsilon = 1;

  AElement block(std::size_t I, std::size_t J) const {
    const std::size_t ell = algebra.ell;
    Matrix<DElement> out(ell, ell, d_zero(algebra.D));
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t j = 0; j < ell; ++j) out(i, j) = gram(I * ell + i, J * ell + j);
    return out;
  }
};

inline void validate_hermitian_form(const HermitianForm& h) {
  const std::size_t n = h.dim * h.algebra.ell;
  if (h.gram.rows() != n || h.gram.cols() != n)
    fail(errc::dimension_mismatch, "Gram size does not match the declared dimension");
  for (std::size_t I = 0; I < h.dim; ++I)
    for (std::size_t J = 0; J < h.dim; ++J) {
      AElement expect = h.block(I, J);
      if (h.epsilon == -1) expect = -expect;
      if (!(apply_sigma(h.algebra, h.block(J, I)) == expect))
        fail(errc::not_hermitian, "Gram matrix is not epsilon-hermitian for sigma");
    }
}

inline HermitianForm form_from_flat(const Algebra& A, std::size_t dim,
                                    const Matrix<DElement>& gram, int epsilon = 1) {
  HermitianForm h{A, dim, gram, epsilon};
  validate_hermitian_form(h);
  return h;
}

inline HermitianForm form_from_blocks(const Algebra& A,
                                      const std::vector<std::vector<AElement>>& blocks,
                                      int epsilon = 1) {
  const std::size_t k = blocks.size();
  const std::size_t ell = A.ell;
  Matrix<DElement> gram(k * ell, k * ell, d_zero(A.D));
  for (std::size_t I = 0; I < k; ++I) {
    if (blocks[I].size() != k) fail(errc::dimension_mismatch, "ragged block Gram");
    for (std::size_t J = 0; J < k; ++J) {
      check_element(A, blocks[I][J]);
      for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) gram(I * ell + i, J * ell + j) = blocks[I][J](i, j);
    }
  }
  return form_from_flat(A, k, gram, epsilon);
}

// <a_1, ..., a_k>_sigma with each a_i in Sym(A, sigma)
inline HermitianForm diag_form(const Algebra& A, const std::vector<AElement>& entries) {
  const std::size_t ell = A.ell;
  const std::size_t k = entries.size();
  Matrix<DElement> gram(k * ell, k * ell, d_zero(A.D));
  for (std::size_t I = 0; I < k; ++I) {
    check_element(A, entries[I]);
    if (!is_symmetric_element(A, entries[I]))
      fail(errc::not_symmetric, "diagonal entry is not sigma-symmetric");
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t j = 0; j < ell; ++j) gram(I * ell + i, I * ell + j) = entries[I](i, j);
  }
  return form_from_flat(A, k, gram, 1);
}

inline HermitianForm diag_form_scalars(const Algebra& A, const std::vector<FieldElement>& cs) {
  std::vector<AElement> entries;
  entries.reserve(cs.size());
  for (const auto& c : cs) entries.push_back(scale_left(d_from_field(A.D, c), a_one(A)));
  return diag_form(A, entries);
}

inline HermitianForm one_form(const Algebra& A) { return diag_form(A, {a_one(A)}); }

inline HermitianForm zero_form(const Algebra& A) {
  return HermitianForm{A, 0, Matrix<DElement>(), 1};
}

// The scaled-collapsed view of h: the (dim*ell)-dimensional (eps_h * eps_A)-hermitian
// form over (D, theta) with Gram (I (x) Phi^{-1}) * gram. This is the composite of the
// two Morita equivalences of the chain; see morita.hpp for the individual steps.
inline DivisionForm division_view(const HermitianForm& h) {
  const Algebra& A = h.algebra;
  Matrix<DElement> b = kron_identity(h.dim, A.phi_inv, d_zero(A.D)) * h.gram;
  DivisionContext ctx{A.D, A.theta, h.epsilon * A.epsilon};
  return division_form(ctx, b);
}

// h(x, x) for x in A^k
inline AElement evaluate(const HermitianForm& h, const std::vector<AElement>& x) {
  if (x.size() != h.dim) fail(errc::dimension_mismatch, "vector length != form dimension");
  for (const auto& xi : x) check_element(h.algebra, xi);
  AElement acc = a_zero(h.algebra);
  for (std::size_t I = 0; I < h.dim; ++I) {
    const AElement sx = apply_sigma(h.algebra, x[I]);
    for (std::size_t J = 0; J < h.dim; ++J) acc = acc + sx * h.block(I, J) * x[J];
  }
  return acc;
}

inline bool represents(const HermitianForm& h, const AElement& u, const std::vector<AElement>& x) {
  check_element(h.algebra, u);
  return evaluate(h, x) == u;
}

inline HermitianForm orth_sum(const HermitianForm& h1, const HermitianForm& h2) {
  if (h1.algebra != h2.algebra) fail(errc::algebra_mismatch, "forms over different algebras");
  if (h1.epsilon != h2.epsilon) fail(errc::algebra_mismatch, "mixed epsilon types");
  if (h1.dim == 0) return h2;
  if (h2.dim == 0) return h1;
  return HermitianForm{h1.algebra, h1.dim + h2.dim,
                       block_diag(h1.gram, h2.gram, d_zero(h1.algebra.D)), h1.epsilon};
}

inline HermitianForm scale_form(const FieldElement& c, const HermitianForm& h, bool allow_zero) {
  if (!allow_zero && c.is_zero()) fail(errc::zero_coefficient, "scaling by zero");
  if (c.field != h.algebra.F()) fail(errc::algebra_mismatch, "scalar from a different field");
  return HermitianForm{h.algebra, h.dim, scale_left(d_from_field(h.algebra.D, c), h.gram),
                       h.epsilon};
}

inline HermitianForm scale_by(const FieldElement& c, const HermitianForm& h) {
  return scale_form(c, h, false);
}

// q (x) h for a diagonal quadratic form q over F
inline HermitianForm tensor(const QuadraticFormF& q, const HermitianForm& h) {
  if (q.field != h.algebra.F()) fail(errc::algebra_mismatch, "quadratic form over a different field");
  HermitianForm acc = zero_form(h.algebra);
  acc.epsilon = h.epsilon;
  for (const auto& c : q.coeffs) acc = orth_sum(acc, scale_form(c, h, true));
  return acc;
}

// Number of nonzero diagonal slots of the collapsed form, counted over D: the rank
// of the underlying module as a sum of simple modules.
inline std::size_t form_rank(const HermitianForm& h) {
  if (h.dim == 0) return 0;
  return diagonalize(division_view(h)).rank();
}

inline bool is_nonsingular(const HermitianForm& h) {
  if (h.dim == 0) return true;
  return diagonalize(division_view(h)).zero_count == 0;
}

// h ~ h_ns perp 0: diagonalize the collapsed form, drop the zeros, lift back with
// zero-padding to a whole number of blocks. The D-level rank of the result is the
// number of entries kept; query it with form_rank.
inline HermitianForm nonsingular_part(const HermitianForm& h) {
  const Algebra& A = h.algebra;
  if (h.dim == 0) return zero_form(A);
  auto diag = diagonalize(division_view(h));
  const std::size_t r = diag.rank();
  if (r == 0) return zero_form(A);
  const std::size_t k = (r + A.ell - 1) / A.ell;
  Matrix<DElement> padded(k * A.ell, k * A.ell, d_zero(A.D));
  std::size_t at = 0;
  for (const auto& e : diag.entries) {
    for (std::size_t i = 0; i < e.rows(); ++i)
      for (std::size_t j = 0; j < e.cols(); ++j) padded(at + i, at + j) = e(i, j);
    at += e.rows();
  }
  Matrix<DElement> gram = kron_identity(k, A.phi, d_zero(A.D)) * padded;
  return form_from_flat(A, k, gram, h.epsilon);
}

}  // namespace hermsig
