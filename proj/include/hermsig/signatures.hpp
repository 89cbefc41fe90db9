// Ordering classification (nil / non-nil, lambda_P, n_P, M_P, m_P, c_P), raw
// signatures through scalar trace forms on the collapsed side, reference tuples
// fixing the sign, and eta-maximality.
//
// The raw signature of <d_1, ..., d_r> over (D, theta) at a non-nil P is
//    sum_i sign_P q_i / c_P,   q_i(x) = tr_F(c^{-1} theta(x) d_i x),
// where the twist c in Sym(D, theta)^x is chosen (deterministically, c = 1 whenever
// possible) so that the transfer form of theta_c = Int(c^{-1}) o theta is alive at P.
// Inserting c composes the chain with one more scaling Morita equivalence, which is a
// legal choice of mu_P; without it the plain trace-form recipe degenerates to the
// zero map for twisted orthogonal involutions at orderings where sign_P theta = 0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hermsig/algebras.hpp"
#include "hermsig/enumerate.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/fields.hpp"
#include "hermsig/forms.hpp"
#include "hermsig/matrix.hpp"

namespace hermsig {

struct OrderingProfile {
  Ordering P;
  bool nil = false;
  int eps_P = 1;
  int lambda_P = 1;
  int n_P = 0;
  int M_P = 0;
  int m_P = 0;
  int c_P = 1;
};

// (a, b)_F is division at the real place P iff a <_P 0 and b <_P 0.
inline bool quaternion_ramified_at(const DivisionRing& r, Ordering P) {
  return sign_at(*r.a, P) < 0 && sign_at(*r.b, P) < 0;
}

inline OrderingProfile classify_division(const DivisionContext& ctx, std::size_t ell, Ordering P) {
  const DivisionRing& ring = ctx.ring;
  OrderingProfile prof;
  prof.P = P;

  const bool second = ring.kind == DivisionKind::quadratic_ext;
  const bool orth_theta = theta_is_orthogonal(ring, ctx.theta);
  const bool symplectic = !second && ((ctx.epsilon == 1) ? !orth_theta : orth_theta);

  if (second) {
    prof.nil = sign_at(*ring.delta, P) > 0;
    prof.lambda_P = 1;
  } else if (ring.kind == DivisionKind::quaternion) {
    const bool ram = quaternion_ramified_at(ring, P);
    prof.lambda_P = ram ? 2 : 1;
    prof.nil = symplectic ? !ram : ram;
  } else {
    prof.lambda_P = 1;
    prof.nil = symplectic;
  }

  const int n = int(ell * ring.degree());
  prof.n_P = n / prof.lambda_P;
  prof.M_P = prof.nil ? 0 : int(ring.degree()) / prof.lambda_P;
  prof.m_P = int(ell) * prof.M_P;
  prof.c_P = int(ring.dim_over_f()) * prof.lambda_P / int(ring.degree());
  prof.eps_P = (prof.nil && !second) ? -1 : 1;
  return prof;
}

inline OrderingProfile classify_ordering(const Algebra& A, Ordering P) {
  return classify_division(DivisionContext{A.D, A.theta, A.epsilon}, A.ell, P);
}

inline std::vector<Ordering> nonnil_orderings(const Algebra& A) {
  std::vector<Ordering> out;
  for (Ordering P : orderings(A.F()))
    if (!classify_ordering(A, P).nil) out.push_back(P);
  return out;
}

inline bool d_is_invertible(const DElement& x) {
  if (x.ring.kind == DivisionKind::split) return !x.c[0].is_zero();
  return !d_norm(x).is_zero();
}

inline DElement d_scale_int(const DElement& x, std::int64_t c) {
  DElement out = x;
  const FieldElement fc = fe_int(x.ring.field, long(c));
  for (auto& v : out.c) v = v * fc;
  return out;
}

// ---------------------------------------------------------------------------
// Scalar trace forms on D and the signature twist

// F-basis of Sym(D, theta), deterministic (symmetrized generators, greedily reduced).
inline std::vector<DElement> division_sym_basis(const DivisionRing& ring,
                                                const CanonicalTheta& th) {
  std::vector<std::vector<FieldElement>> candidates;
  for (std::size_t g = 0; g < ring.coord_count(); ++g) {
    DElement s = d_gen(ring, g) + apply_theta(th, d_gen(ring, g));
    candidates.push_back(s.c);
  }
  std::vector<DElement> out;
  for (auto& row : detail::independent_rows(std::move(candidates)))
    out.push_back(DElement{ring, row});
  return out;
}

// Gram matrix over the D-basis of the F-quadratic form x -> tr_F(c^{-1} theta(x) d x),
// where tr_F is Trd_D for the first kind and the K/F-trace for the second kind.
inline Matrix<FieldElement> division_trace_gram(const DivisionContext& ctx, const DElement& c,
                                                const DElement& d) {
  const DivisionRing& ring = ctx.ring;
  const DElement cinv = c.inverse();
  const std::size_t m = ring.coord_count();
  Matrix<FieldElement> g(m, m, fe_zero(ring.field));
  for (std::size_t r = 0; r < m; ++r) {
    DElement left = cinv * apply_theta(ctx.theta, d_gen(ring, r)) * d;
    for (std::size_t s = 0; s < m; ++s) g(r, s) = field_trace(left * d_gen(ring, s));
  }
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r + 1; s < m; ++s)
      if (!(g(r, s) == g(s, r)))
        fail(errc::not_symmetric, "scalar trace form is not symmetric (bad twist?)");
  return g;
}

// The transfer form of theta_c = Int(c^{-1}) o theta has nonzero signature at P iff
// the c-twisted recipe computes a nonzero multiple of the Sylvester signature there.
inline bool twist_alive(const DivisionContext& ctx, const DElement& c, Ordering P) {
  return symmetric_signature(division_trace_gram(ctx, c, c), P) != 0;
}

// Deterministic twist for (D, theta) at a non-nil P: the identity whenever it works,
// else the first invertible symmetric element (graded coefficient search over
// division_sym_basis) whose twisted involution is alive at P.
inline DElement signature_twist(const DivisionContext& ctx, Ordering P, int max_height = 4) {
  const DElement one = d_one(ctx.ring);
  if (twist_alive(ctx, one, P)) return one;
  const auto basis = division_sym_basis(ctx.ring, ctx.theta);
  DElement found = one;
  bool ok = graded_tuples(basis.size(), max_height, [&](const std::vector<std::int64_t>& cs) {
    DElement cand = d_zero(ctx.ring);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (cs[i] != 0) cand = cand + d_scale_int(basis[i], cs[i]);
    if (!d_is_invertible(cand)) return false;
    if (!twist_alive(ctx, cand, P)) return false;
    found = cand;
    return true;
  });
  if (!ok) fail(errc::search_exhausted, "no alive signature twist within the height bound");
  return found;
}

// ---------------------------------------------------------------------------
// Raw signatures

namespace detail {

inline int raw_entry(const DivisionContext& ctx, const OrderingProfile& prof, const DElement& c,
                     const DElement& d, Ordering P) {
  const int s = symmetric_signature(division_trace_gram(ctx, c, d), P);
  if (s % prof.c_P != 0)
    fail(errc::not_a_perfect_square, "trace signature not divisible by c_P");
  return s / prof.c_P;
}

}  // namespace detail

// Raw signature of a nonsingular division-level form, viewed over the algebra
// (M_ell(D), theta^t) with the given ell (ell = 1 for plain (D, theta) forms).
inline int division_raw_signature(const DivisionForm& f, Ordering P) {
  const OrderingProfile prof = classify_division(f.ctx, 1, P);
  auto diag = diagonalize(f);
  if (diag.zero_count != 0) fail(errc::singular_form, "form is singular");
  if (prof.nil) return 0;
  const DElement c = signature_twist(f.ctx, P);
  int sum = 0;
  for (const auto& e : diag.entries) sum += detail::raw_entry(f.ctx, prof, c, e(0, 0), P);
  return sum;
}

// s_{mu_P}(h) for a nonsingular hermitian form over (A, sigma).
inline int raw_signature(const Algebra& A, const HermitianForm& h, Ordering P) {
  if (h.algebra != A) fail(errc::algebra_mismatch, "form lives over a different algebra");
  if (h.epsilon != 1) fail(errc::not_hermitian, "signatures are defined for hermitian forms");
  if (h.dim == 0) return 0;
  const DivisionForm dv = division_view(h);
  auto diag = diagonalize(dv);
  if (diag.zero_count != 0) fail(errc::singular_form, "form is singular");
  const OrderingProfile prof = classify_ordering(A, P);
  if (prof.nil) return 0;
  const DElement c = signature_twist(dv.ctx, P);
  int sum = 0;
  for (const auto& e : diag.entries) sum += detail::raw_entry(dv.ctx, prof, c, e(0, 0), P);
  return sum;
}

// ---------------------------------------------------------------------------
// Reference tuples and signed signatures

struct ReferenceTuple {
  std::vector<HermitianForm> forms;  // first entry <1>_sigma
  std::vector<int> norm_sign;        // indexed by ordering index; 0 at nil orderings
};

// Builds (<1>_sigma, ...): for each non-nil P whose raw signatures all vanish on the
// current entries, append a one-dimensional form <u>_sigma found by the graded
// coefficient search over sym_basis(A); the stored sign makes the least nonzero
// entry positive at each non-nil P.
inline ReferenceTuple reference_tuple(const Algebra& A, int max_height = 3) {
  ReferenceTuple eta;
  eta.forms.push_back(one_form(A));
  eta.norm_sign.assign(orderings(A.F()).size(), 0);

  for (Ordering P : orderings(A.F())) {
    const OrderingProfile prof = classify_ordering(A, P);
    if (prof.nil) continue;
    int raw = 0;
    for (const auto& f : eta.forms) {
      raw = raw_signature(A, f, P);
      if (raw != 0) break;
    }
    if (raw == 0) {
      const auto basis = sym_basis(A);
      bool ok = graded_tuples(basis.size(), max_height, [&](const std::vector<std::int64_t>& cs) {
        AElement u = a_zero(A);
        for (std::size_t i = 0; i < basis.size(); ++i) {
          if (cs[i] == 0) continue;
          u = u + scale_left(d_from_field(A.D, fe_int(A.F(), long(cs[i]))), basis[i]);
        }
        if (!try_inverse(u, d_zero(A.D), d_one(A.D))) return false;
        const HermitianForm cand = diag_form(A, {u});
        const int r = raw_signature(A, cand, P);
        if (r == 0) return false;
        eta.forms.push_back(cand);
        raw = r;
        return true;
      });
      if (!ok) fail(errc::search_exhausted, "no reference form found within the height bound");
    }
    eta.norm_sign[std::size_t(P.index)] = raw > 0 ? 1 : -1;
  }
  return eta;
}

inline void check_reference(const ReferenceTuple& eta, const Algebra& A) {
  if (eta.forms.empty() || eta.forms.front().algebra != A)
    fail(errc::algebra_mismatch, "reference tuple belongs to a different algebra");
}

inline int signed_signature(const Algebra& A, const ReferenceTuple& eta, const HermitianForm& h,
                            Ordering P) {
  check_reference(eta, A);
  const OrderingProfile prof = classify_ordering(A, P);
  if (prof.nil) return 0;
  return eta.norm_sign[std::size_t(P.index)] * raw_signature(A, h, P);
}

// ---------------------------------------------------------------------------
// Maximality

// eta-maximality of a (possibly singular) form: the nonsingular part must attain
// rank * M_P. Trivially true at nil orderings.
inline bool is_maximal_form(const Algebra& A, const ReferenceTuple& eta, const HermitianForm& h,
                            Ordering P) {
  check_reference(eta, A);
  const OrderingProfile prof = classify_ordering(A, P);
  if (prof.nil) return true;
  if (h.dim == 0) return true;
  const DivisionForm dv = division_view(h);
  auto diag = diagonalize(dv);
  if (diag.entries.empty()) return true;  // zero form
  const DElement c = signature_twist(dv.ctx, P);
  int sum = 0;
  for (const auto& e : diag.entries) sum += detail::raw_entry(dv.ctx, prof, c, e(0, 0), P);
  const int signed_sig = eta.norm_sign[std::size_t(P.index)] * sum;
  return signed_sig == int(diag.rank()) * prof.M_P;
}

inline bool is_maximal_element(const Algebra& A, const ReferenceTuple& eta, const AElement& u,
                               Ordering P) {
  return is_maximal_form(A, eta, diag_form(A, {u}), P);
}

// A one-dimensional form with signed signature exactly m_P at the given non-nil P
// (the lifted form <Phi diag(d, ..., d)>_sigma of the rank bound): search d over
// Sym(D, theta), flip to -d if the sign comes out negative.
inline HermitianForm maximal_diag_form(const Algebra& A, const ReferenceTuple& eta, Ordering P,
                                       int max_height = 4) {
  check_reference(eta, A);
  const OrderingProfile prof = classify_ordering(A, P);
  if (prof.nil) fail(errc::search_exhausted, "no maximal form at a nil ordering");
  const DivisionContext ctx{A.D, A.theta, A.epsilon};
  const auto basis = division_sym_basis(A.D, A.theta);
  const DElement c = signature_twist(ctx, P);

  HermitianForm out = one_form(A);
  bool ok = graded_tuples(basis.size(), max_height, [&](const std::vector<std::int64_t>& cs) {
    DElement d = d_zero(A.D);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (cs[i] != 0) d = d + d_scale_int(basis[i], cs[i]);
    if (!d_is_invertible(d)) return false;
    if (std::abs(detail::raw_entry(ctx, prof, c, d, P)) != prof.M_P) return false;
    Matrix<DElement> w(A.ell, A.ell, d_zero(A.D));
    for (std::size_t i = 0; i < A.ell; ++i) w(i, i) = d;
    HermitianForm cand = form_from_flat(A, 1, A.phi * w, 1);
    const int s = signed_signature(A, eta, cand, P);
    if (s == prof.m_P) {
      out = cand;
      return true;
    }
    if (s == -prof.m_P) {
      out = scale_by(fe_int(A.F(), -1), cand);
      return true;
    }
    return false;
  });
  if (!ok) fail(errc::search_exhausted, "no maximal diagonal form within the height bound");
  return out;
}

}  // namespace hermsig
