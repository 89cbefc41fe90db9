// F-algebras with involution stored in the canonical shape (M_ell(D), Int(Phi) o theta^t).
// Phi is the Gram matrix of an epsilon-hermitian form over (D, theta); epsilon is inferred
// and epsilon = -1 is only legal in the split symplectic corner (D, theta) = (F, id).
#pragma once

#include <cstddef>
#include <vector>

#include "hermsig/delement.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/matrix.hpp"

namespace hermsig {

enum class InvolutionType { orthogonal, symplectic, unitary };

inline const char* involution_type_name(InvolutionType t) {
  switch (t) {
    case InvolutionType::orthogonal: return "orthogonal";
    case InvolutionType::symplectic: return "symplectic";
    case InvolutionType::unitary: return "unitary";
  }
  return "?";
}

struct Algebra {
  DivisionRing D;
  CanonicalTheta theta;
  std::size_t ell = 1;
  Matrix<DElement> phi;
  Matrix<DElement> phi_inv;
  int epsilon = 1;  // theta(Phi)^t = epsilon * Phi

  BaseField F() const { return D.field; }
  bool second_kind() const { return D.kind == DivisionKind::quadratic_ext; }
  std::size_t degree() const { return ell * D.degree(); }  // n
  std::size_t dim_over_centre() const { return degree() * degree(); }
  // dimension of A as an F-vector space
  std::size_t dim_over_f() const {
    return second_kind() ? 2 * ell * ell : ell * ell * D.dim_over_f();
  }

  friend bool operator==(const Algebra& x, const Algebra& y) {
    return x.D == y.D && x.theta == y.theta && x.ell == y.ell && x.phi == y.phi &&
           x.epsilon == y.epsilon;
  }
  friend bool operator!=(const Algebra& x, const Algebra& y) { return !(x == y); }
};

using AElement = Matrix<DElement>;  // ell x ell matrix over D

inline AElement a_zero(const Algebra& A) {
  return Matrix<DElement>(A.ell, A.ell, d_zero(A.D));
}
inline AElement a_one(const Algebra& A) {
  return identity_matrix(A.ell, d_one(A.D), d_zero(A.D));
}

inline void check_element(const Algebra& A, const AElement& x) {
  if (x.rows() != A.ell || x.cols() != A.ell)
    fail(errc::dimension_mismatch, "element has the wrong matrix size");
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j).ring != A.D) fail(errc::algebra_mismatch, "entry from a different division ring");
}

// theta applied entrywise followed by transposition.
inline Matrix<DElement> theta_transpose(const CanonicalTheta& th, const Matrix<DElement>& m) {
  return transpose(map_entries(m, [&](const DElement& v) { return apply_theta(th, v); }));
}

inline Algebra make_algebra(const DivisionRing& D, const CanonicalTheta& theta, std::size_t ell,
                            const Matrix<DElement>& phi) {
  validate_theta(D, theta);
  if (ell == 0) fail(errc::dimension_mismatch, "ell must be positive");
  if (phi.rows() != ell || phi.cols() != ell)
    fail(errc::dimension_mismatch, "Phi must be ell x ell");
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < ell; ++j)
      if (phi(i, j).ring != D) fail(errc::algebra_mismatch, "Phi entry from a different ring");

  Matrix<DElement> tphi = theta_transpose(theta, phi);
  int epsilon;
  if (tphi == phi) {
    epsilon = 1;
  } else if (tphi == -phi) {
    epsilon = -1;
  } else {
    fail(errc::involution_axiom_violation, "Phi is not (skew-)hermitian for theta");
  }
  if (epsilon == -1 &&
      !(D.kind == DivisionKind::split && theta.kind == ThetaKind::identity)) {
    fail(errc::illegal_epsilon, "epsilon = -1 is only allowed for (F, id)");
  }

  auto inv = try_inverse(phi, d_zero(D), d_one(D));
  if (!inv) fail(errc::singular_phi, "Phi is singular");

  Algebra A{D, theta, ell, phi, *inv, epsilon};

  // sigma^2 = id is forced by the epsilon symmetry; spot-check a few elements anyway.
  auto sigma = [&](const AElement& x) { return A.phi * theta_transpose(A.theta, x) * A.phi_inv; };
  for (std::size_t g = 0; g < D.coord_count(); ++g) {
    AElement probe = a_zero(A);
    probe(0, ell - 1) = d_gen(D, g);
    if (!(sigma(sigma(probe)) == probe))
      fail(errc::involution_axiom_violation, "sigma is not an involution");
  }
  return A;
}

inline AElement apply_sigma(const Algebra& A, const AElement& x) {
  check_element(A, x);
  return A.phi * theta_transpose(A.theta, x) * A.phi_inv;
}

inline bool is_symmetric_element(const Algebra& A, const AElement& u) {
  return apply_sigma(A, u) == u;
}

inline InvolutionType involution_type(const Algebra& A) {
  if (A.second_kind()) return InvolutionType::unitary;
  bool orth;
  switch (A.theta.kind) {
    case ThetaKind::identity: orth = true; break;
    case ThetaKind::twisted_conjugation: orth = true; break;
    case ThetaKind::conjugation: orth = false; break;
    default: orth = true; break;
  }
  if (A.epsilon == -1) orth = !orth;  // type flips against theta when epsilon = -1
  return orth ? InvolutionType::orthogonal : InvolutionType::symplectic;
}

// Reduced trace of A; lands in F for the first kind and in K for the second kind.
inline DElement reduced_trace(const Algebra& A, const AElement& x) {
  check_element(A, x);
  DElement t = d_zero(A.D);
  for (std::size_t i = 0; i < A.ell; ++i) t = t + reduced_trace_d(x(i, i));
  return t;
}

inline FieldElement reduced_trace_f(const Algebra& A, const AElement& x) {
  return reduced_trace(A, x).as_field();
}

// Fixed F-basis of A: matrix units tensored with the D-basis (1), (1, sqrt(delta)) or
// (1, i, j, k), row-major unit order, D-coordinate fastest. Trace-form Gram matrices
// are reported in exactly this basis.
inline std::vector<AElement> f_basis(const Algebra& A) {
  std::vector<AElement> basis;
  basis.reserve(A.dim_over_f());
  for (std::size_t i = 0; i < A.ell; ++i)
    for (std::size_t j = 0; j < A.ell; ++j)
      for (std::size_t g = 0; g < A.D.coord_count(); ++g) {
        AElement e = a_zero(A);
        e(i, j) = d_gen(A.D, g);
        basis.push_back(e);
      }
  return basis;
}

// Coordinates of x in f_basis(A); read off entrywise, no linear solve needed.
inline std::vector<FieldElement> f_coords(const Algebra& A, const AElement& x) {
  check_element(A, x);
  std::vector<FieldElement> out;
  out.reserve(A.dim_over_f());
  for (std::size_t i = 0; i < A.ell; ++i)
    for (std::size_t j = 0; j < A.ell; ++j)
      for (std::size_t g = 0; g < A.D.coord_count(); ++g) out.push_back(x(i, j).c[g]);
  return out;
}

inline AElement from_f_coords(const Algebra& A, const std::vector<FieldElement>& coords) {
  if (coords.size() != A.dim_over_f()) fail(errc::dimension_mismatch, "coordinate count");
  AElement x = a_zero(A);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < A.ell; ++i)
    for (std::size_t j = 0; j < A.ell; ++j)
      for (std::size_t g = 0; g < A.D.coord_count(); ++g) x(i, j).c[g] = coords[idx++];
  return x;
}

namespace detail {

// Greedy row reduction producing a deterministic basis from a candidate list.
inline std::vector<std::vector<FieldElement>> independent_rows(
    std::vector<std::vector<FieldElement>> candidates) {
  std::vector<std::vector<FieldElement>> rows;
  std::vector<std::size_t> pivots;
  for (auto cand : candidates) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const FieldElement c = cand[pivots[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < cand.size(); ++j) cand[j] = cand[j] - c * rows[r][j];
    }
    std::size_t pivot = cand.size();
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (!cand[j].is_zero()) {
        pivot = j;
        break;
      }
    if (pivot == cand.size()) continue;
    const FieldElement lead = cand[pivot].inverse();
    for (auto& v : cand) v = v * lead;
    rows.push_back(cand);
    pivots.push_back(pivot);
  }
  return rows;
}

}  // namespace detail

// Deterministic F-basis of Sym(A, sigma), obtained by symmetrizing f_basis and
// reducing greedily in order (leading coefficients normalized to 1).
inline std::vector<AElement> sym_basis(const Algebra& A) {
  std::vector<std::vector<FieldElement>> candidates;
  for (const auto& g : f_basis(A)) {
    AElement s = g + apply_sigma(A, g);
    candidates.push_back(f_coords(A, s));
  }
  std::vector<AElement> out;
  for (const auto& row : detail::independent_rows(std::move(candidates)))
    out.push_back(from_f_coords(A, row));
  return out;
}

}  // namespace hermsig
