// Involution trace forms T_{(A, sigma, u)}, involution signatures, the set X_sigma,
// the maximality/trace-form audit and the PS' decision.
//
// First kind: the Gram matrix lives over F in the fixed basis from f_basis(). Second
// kind: the natural Gram is hermitian over (K, conj); all signature and definiteness
// work goes through the 2-to-1 transfer to an F-symmetric form (hermitian Sylvester
// signature = transfer signature / 2).
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hermsig/algebras.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/fields.hpp"
#include "hermsig/forms.hpp"
#include "hermsig/matrix.hpp"
#include "hermsig/morita.hpp"
#include "hermsig/signatures.hpp"

namespace hermsig {

struct TraceForm {
  Algebra algebra;
  AElement u;
  Matrix<FieldElement> f_gram;             // first kind: m x m; second kind: the 2m x 2m transfer
  std::optional<Matrix<DElement>> k_gram;  // second kind only: hermitian over (K, conj)
};

inline TraceForm trace_form(const Algebra& A, const AElement& u) {
  check_element(A, u);
  if (!is_symmetric_element(A, u)) fail(errc::not_symmetric, "u is not sigma-symmetric");

  TraceForm t{A, u, Matrix<FieldElement>(), std::nullopt};
  if (!A.second_kind()) {
    const auto basis = f_basis(A);
    const std::size_t m = basis.size();
    Matrix<FieldElement> g(m, m, fe_zero(A.F()));
    for (std::size_t r = 0; r < m; ++r) {
      const AElement left = apply_sigma(A, basis[r]) * u;
      for (std::size_t s = 0; s < m; ++s) g(r, s) = reduced_trace(A, left * basis[s]).as_field();
    }
    t.f_gram = g;
    return t;
  }

  // Second kind: K-basis = matrix units; F-basis = units interleaved with unit*sqrt(delta).
  std::vector<AElement> units;
  for (std::size_t i = 0; i < A.ell; ++i)
    for (std::size_t j = 0; j < A.ell; ++j) {
      AElement e = a_zero(A);
      e(i, j) = d_one(A.D);
      units.push_back(e);
    }
  const std::size_t mk = units.size();
  Matrix<DElement> kg(mk, mk, d_zero(A.D));
  for (std::size_t r = 0; r < mk; ++r) {
    const AElement left = apply_sigma(A, units[r]) * u;
    for (std::size_t s = 0; s < mk; ++s) kg(r, s) = reduced_trace(A, left * units[s]);
  }
  for (std::size_t r = 0; r < mk; ++r)
    for (std::size_t s = 0; s < mk; ++s)
      if (!(kg(s, r) == d_conj(kg(r, s))))
        fail(errc::not_hermitian, "trace form Gram is not hermitian over K");
  t.k_gram = kg;

  const auto basis = f_basis(A);  // units tensored with (1, sqrt(delta))
  const std::size_t m = basis.size();
  Matrix<FieldElement> g(m, m, fe_zero(A.F()));
  for (std::size_t r = 0; r < m; ++r) {
    const AElement left = apply_sigma(A, basis[r]) * u;
    // polar form of x -> T(x, x): the K/F-trace halved, i.e. the first K-coordinate
    for (std::size_t s = 0; s < m; ++s) g(r, s) = reduced_trace(A, left * basis[s]).c[0];
  }
  t.f_gram = g;
  return t;
}

// Sylvester signature of the trace form at P (hermitian signature for the second kind).
inline int trace_signature(const TraceForm& t, Ordering P) {
  const int s = symmetric_signature(t.f_gram, P);
  if (!t.algebra.second_kind()) return s;
  if (s % 2 != 0) fail(errc::not_a_perfect_square, "transfer signature must be even");
  return s / 2;
}

// sign_P sigma = sqrt(sign_P T_{(A, sigma)}).
inline int involution_signature(const Algebra& A, Ordering P) {
  const int s = trace_signature(trace_form(A, a_one(A)), P);
  if (s < 0) fail(errc::not_a_perfect_square, "negative involution trace signature");
  int r = 0;
  while (r * r < s) ++r;
  if (r * r != s) fail(errc::not_a_perfect_square, "involution trace signature is not a square");
  return r;
}

inline bool is_psd_at(const TraceForm& t, Ordering P) {
  auto d = symmetric_diagonalize(t.f_gram);
  for (const auto& v : d.diagonal)
    if (sign_at(v, P) < 0) return false;
  return true;
}

inline bool is_pd_at(const TraceForm& t, Ordering P) {
  auto d = symmetric_diagonalize(t.f_gram);
  for (const auto& v : d.diagonal)
    if (sign_at(v, P) <= 0) return false;
  return true;
}

inline bool is_nd_at(const TraceForm& t, Ordering P) {
  auto d = symmetric_diagonalize(t.f_gram);
  for (const auto& v : d.diagonal)
    if (sign_at(v, P) >= 0) return false;
  return true;
}

// Diagonal entries <b_1, ..., b_m> of T_{(A, sigma)} over F (transfer entries for the
// second kind); X_sigma is their Harrison set.
inline std::vector<FieldElement> x_sigma_generators(const Algebra& A) {
  const TraceForm t = trace_form(A, a_one(A));
  auto d = symmetric_diagonalize(t.f_gram);
  for (const auto& v : d.diagonal)
    if (v.is_zero()) fail(errc::singular_form, "T_{(A,sigma)} must be nonsingular");
  return d.diagonal;
}

inline HarrisonSet x_sigma_harrison(const Algebra& A) { return harrison(x_sigma_generators(A)); }

inline std::vector<Ordering> x_sigma(const Algebra& A) { return x_sigma_harrison(A).members; }

// ---------------------------------------------------------------------------
// Maximality vs trace-form positivity (per-ordering audit over X_sigma)

struct AuditRow {
  Ordering P;
  bool psd = false;      // T_{(A, sigma, u)} positive semidefinite at P
  bool maximal = false;  // <u>^ns eta-maximal at P
  bool agree = false;
  // for invertible u: (T PD or ND at P) <-> (u or -u maximal at P)
  std::optional<bool> definite, pm_maximal, eqvs2_agree;
  // refinement: with 1 eta-maximal at P, T PD <-> u maximal (mirrored for -1)
  std::optional<bool> refined_agree;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  bool all_agree = true;
};

inline AuditReport maximality_trace_audit(const Algebra& A, const ReferenceTuple& eta,
                                          const AElement& u) {
  check_reference(eta, A);
  check_element(A, u);
  if (!is_symmetric_element(A, u)) fail(errc::not_symmetric, "u is not sigma-symmetric");
  if (!(eta.forms.front().gram == one_form(A).gram))
    fail(errc::algebra_mismatch, "the audit needs a reference tuple starting with <1>");

  const TraceForm tu = trace_form(A, u);
  const bool invertible = try_inverse(u, d_zero(A.D), d_one(A.D)).has_value();
  const AElement minus_u = -u;

  AuditReport report;
  for (Ordering P : x_sigma(A)) {
    AuditRow row;
    row.P = P;
    row.psd = is_psd_at(tu, P);
    row.maximal = is_maximal_element(A, eta, u, P);
    row.agree = row.psd == row.maximal;
    bool ok = row.agree;
    if (invertible) {
      const bool pd = is_pd_at(tu, P);
      const bool nd = is_nd_at(tu, P);
      row.definite = pd || nd;
      row.pm_maximal = row.maximal || is_maximal_element(A, eta, minus_u, P);
      row.eqvs2_agree = (*row.definite == *row.pm_maximal);
      ok = ok && *row.eqvs2_agree;
      if (is_maximal_element(A, eta, a_one(A), P)) {
        row.refined_agree = (pd == row.maximal);
      } else if (is_maximal_element(A, eta, -a_one(A), P)) {
        row.refined_agree = (nd == row.maximal);
      }
      if (row.refined_agree) ok = ok && *row.refined_agree;
    }
    report.all_agree = report.all_agree && ok;
    report.rows.push_back(row);
  }
  return report;
}

// ---------------------------------------------------------------------------
// The PS' decision (holds iff X~_F = X_sigma) and the positive involution on D

struct PSVerdict {
  bool holds = false;
  std::vector<Ordering> x_tilde;
  std::vector<Ordering> x_sigma;
  // on failure: the witness element is u = 1, failing at this ordering
  std::optional<Ordering> witness_ordering;
};

inline PSVerdict ps_prime_check(const Algebra& A) {
  PSVerdict v;
  v.x_tilde = nonnil_orderings(A);
  v.x_sigma = x_sigma(A);
  for (Ordering P : v.x_sigma) {
    bool in_tilde = false;
    for (Ordering Q : v.x_tilde) in_tilde = in_tilde || Q == P;
    if (!in_tilde) fail(errc::not_a_perfect_square, "X_sigma must sit inside X~_F");
  }
  v.holds = v.x_tilde.size() == v.x_sigma.size();
  if (!v.holds) {
    for (Ordering P : v.x_tilde) {
      bool in_sigma = false;
      for (Ordering Q : v.x_sigma) in_sigma = in_sigma || Q == P;
      if (!in_sigma) {
        v.witness_ordering = P;
        break;
      }
    }
  }
  return v;
}

// An involution tau = theta_{a_1} on D with X_sigma contained in X_tau, where a_1 is
// the first collapsed diagonal entry of <1>_sigma.
inline CanonicalTheta choose_positive_theta(const Algebra& A) {
  if (x_sigma(A).empty()) fail(errc::empty_x_sigma, "X_sigma is empty");
  auto diag = diagonalize(division_view(one_form(A)));
  const DElement a1 = diag.entries.front()(0, 0);

  CanonicalTheta tau;
  switch (A.theta.kind) {
    case ThetaKind::identity:
      tau = CanonicalTheta{ThetaKind::identity, {}};
      break;
    case ThetaKind::conjugation:
      // a_1 is a central symmetric unit here, so the twist is conjugation again
      tau = CanonicalTheta{ThetaKind::conjugation, {}};
      break;
    case ThetaKind::twisted_conjugation: {
      DElement s2 = a1.inverse() * *A.theta.s;
      if (!s2.c[0].is_zero())
        fail(errc::involution_axiom_violation, "twisted pivot did not stay pure");
      tau = CanonicalTheta{ThetaKind::twisted_conjugation, s2};
      break;
    }
  }

  // verify X_sigma subset X_tau on the division algebra (D, tau)
  Algebra At = make_algebra(A.D, tau, 1, identity_matrix(1, d_one(A.D), d_zero(A.D)));
  const auto xt = x_sigma(At);
  for (Ordering P : x_sigma(A)) {
    bool in = false;
    for (Ordering Q : xt) in = in || Q == P;
    if (!in) fail(errc::involution_axiom_violation, "chosen involution is not positive on X_sigma");
  }
  return tau;
}

}  // namespace hermsig
