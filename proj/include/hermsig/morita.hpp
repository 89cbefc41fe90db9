// The explicit Morita chain: scaling by Phi^{-1} from (A, ad_Phi) to (M_ell(D), theta^t),
// collapsing to (D, theta) by reinterpreting the block Gram matrix, and lifting back.
// Block convention: row-major flattening D^(k*ell) = (D^ell)^k, so collapsing is the
// identity on the stored Gram data.
#pragma once

#include <cstddef>

#include "hermsig/algebras.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/forms.hpp"

namespace hermsig {

struct MoritaContext {
  Algebra algebra;

  DivisionContext division() const {
    return DivisionContext{algebra.D, algebra.theta, algebra.epsilon};
  }
};

// The same algebra in theta^t shape (Phi = identity).
inline Algebra scaled_twin(const Algebra& A) {
  return make_algebra(A.D, A.theta, A.ell, identity_matrix(A.ell, d_one(A.D), d_zero(A.D)));
}

inline bool is_theta_t_shaped(const Algebra& A) {
  return A.phi == identity_matrix(A.ell, d_one(A.D), d_zero(A.D));
}

// (M, h) -> (M, Phi^{-1} h): an eps_h-hermitian form over (A, ad_Phi) becomes an
// (eps_h * eps_A)-hermitian form over (M_ell(D), theta^t).
inline HermitianForm morita_scale(const HermitianForm& h) {
  const Algebra& A = h.algebra;
  validate_hermitian_form(h);
  Algebra twin = scaled_twin(A);
  Matrix<DElement> gram = kron_identity(h.dim, A.phi_inv, d_zero(A.D)) * h.gram;
  return form_from_flat(twin, h.dim, gram, h.epsilon * A.epsilon);
}

// (M, h) over (M_ell(D), theta^t) -> (D^(k*ell), b): the k x k block Gram matrix is
// reread as a (k*ell) x (k*ell) matrix over D.
inline DivisionForm morita_collapse(const HermitianForm& h) {
  const Algebra& A = h.algebra;
  if (!is_theta_t_shaped(A))
    fail(errc::algebra_mismatch, "collapse expects the scaled (Phi = 1) shape");
  return division_form(DivisionContext{A.D, A.theta, h.epsilon}, h.gram);
}

// Inverse of collapse-then-scale. The dimension must fill whole blocks; pass
// pad = true to append zero rows as in the nonsingular-part construction.
inline HermitianForm morita_lift(const Algebra& A, const DivisionForm& phi, bool pad = false) {
  if (phi.ctx.ring != A.D || !(phi.ctx.theta == A.theta))
    fail(errc::algebra_mismatch, "form lives over a different division level");
  const std::size_t r = phi.dim();
  if (r == 0) return zero_form(A);
  if (r % A.ell != 0 && !pad)
    fail(errc::indivisible_dimension, "dimension does not fill whole blocks");
  const std::size_t k = (r + A.ell - 1) / A.ell;
  Matrix<DElement> padded(k * A.ell, k * A.ell, d_zero(A.D));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) padded(i, j) = phi.gram(i, j);
  Matrix<DElement> gram = kron_identity(k, A.phi, d_zero(A.D)) * padded;
  return form_from_flat(A, k, gram, phi.ctx.epsilon * A.epsilon);
}

// sigma_u = Int(u^{-1}) o sigma for invertible symmetric u; in canonical shape this is
// ad_{Phi'} with Phi' = u^{-1} Phi, and epsilon is unchanged.
inline Algebra adjoint_involution(const Algebra& A, const AElement& u) {
  check_element(A, u);
  if (!is_symmetric_element(A, u)) fail(errc::not_symmetric, "u is not sigma-symmetric");
  auto uinv = try_inverse(u, d_zero(A.D), d_one(A.D));
  if (!uinv) fail(errc::not_invertible, "u is singular");
  return make_algebra(A.D, A.theta, A.ell, *uinv * A.phi);
}

}  // namespace hermsig
