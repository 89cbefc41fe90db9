// Acceptance suite: one pass/fail line per criterion, exit 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "hermsig/certificates.hpp"
#include "hermsig/morita.hpp"
#include "hermsig/positivity.hpp"
#include "hermsig/signatures.hpp"
#include "test_support.hpp"

using namespace hermsig;
using hermsig::testing::Rng;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& desc, bool ok) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", n, desc.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

DivisionContext ctx_of(const Algebra& A) { return {A.D, A.theta, A.epsilon}; }

std::vector<Algebra> corpus() {
  return {testing::hamilton(),       testing::m2q_transpose(), testing::m2q_ad_diag(),
          testing::m2q_symplectic(), testing::quat_sqrt2(),    testing::unitary_ext(-3),
          testing::unitary_ext(5),   testing::m2_hamilton(),   testing::quat_m1_3_twisted(),
          testing::quat_3_5_twisted()};
}

// 1. Diagonalization soundness on >= 200 random Gram matrices per family.
bool run_diagonalization() {
  Rng rng(101);
  const std::vector<DivisionContext> families = {
      {DivisionRing::split(BaseField::Q()), {ThetaKind::identity, {}}, 1},
      {DivisionRing::split(BaseField::Q()), {ThetaKind::identity, {}}, -1},
      {DivisionRing::split(BaseField::Qsqrt(2)), {ThetaKind::identity, {}}, 1},
      ctx_of(testing::hamilton()),
      ctx_of(testing::quat_sqrt2()),
      ctx_of(testing::unitary_ext(-3))};
  for (const auto& ctx : families) {
    for (int it = 0; it < 200; ++it) {
      const std::size_t n = 1 + it % 4;
      const DivisionForm f{ctx, testing::random_hermitian_gram(ctx, n, rng, 3)};
      const auto d = diagonalize(f);
      const Matrix<DElement> lhs = theta_transpose(ctx.theta, d.transform) * f.gram * d.transform;
      if (!(lhs == d.diagonal_gram(ctx.ring))) return false;
      if (!try_inverse(d.transform, d_zero(ctx.ring), d_one(ctx.ring))) return false;
      for (const auto& e : d.entries)
        if (!try_inverse(e, d_zero(ctx.ring), d_one(ctx.ring))) return false;
    }
  }
  return true;
}

// 2. Morita round trip and exact rank multiplicativity on >= 200 division forms.
bool run_morita_roundtrip() {
  Rng rng(102);
  const std::vector<Algebra> algebras = {testing::m2q_transpose(), testing::m2q_ad_diag(),
                                         testing::m2q_symplectic(), testing::hamilton(),
                                         testing::m2_hamilton(),   testing::quat_sqrt2(),
                                         testing::unitary_ext(-3)};
  int total = 0;
  for (const Algebra& A : algebras) {
    const DivisionContext ctx = ctx_of(A);
    for (int it = 0; it < 30; ++it, ++total) {
      const std::size_t blocks = 1 + it % 2;
      const DivisionForm f{ctx, testing::random_hermitian_gram(ctx, blocks * A.ell, rng, 3)};
      const HermitianForm lifted = morita_lift(A, f);
      if (lifted.dim * A.ell != f.dim()) return false;
      const DivisionForm back = morita_collapse(morita_scale(lifted));
      if (!(back.gram == f.gram) || back.ctx.epsilon != f.ctx.epsilon) return false;
    }
  }
  return total >= 200;
}

// 3. lambda_P |sign <u>| equals sqrt(sign T_{(A, sigma_u)}) by disjoint code paths.
bool run_signature_crosscheck() {
  Rng rng(103);
  const std::vector<Algebra> families = {testing::hamilton(),    testing::m2q_transpose(),
                                         testing::m2q_ad_diag(), testing::quat_sqrt2(),
                                         testing::unitary_ext(-3), testing::quat_m1_3_twisted(),
                                         testing::quat_3_5_twisted()};
  for (const Algebra& A : families) {
    const ReferenceTuple eta = reference_tuple(A);
    for (int it = 0; it < 100; ++it) {
      const AElement u = testing::random_invertible_symmetric(A, rng, 3);
      const Algebra Au = adjoint_involution(A, u);
      for (Ordering P : orderings(A.F())) {
        const OrderingProfile prof = classify_ordering(A, P);
        const int lhs = prof.lambda_P *
                        std::abs(signed_signature(A, eta, diag_form(A, {u}), P));
        const int rhs = involution_signature(Au, P);
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

// 4. Involution trace signatures are perfect squares across the corpus.
bool run_perfect_squares() {
  Rng rng(104);
  for (const Algebra& A : corpus()) {
    for (Ordering P : orderings(A.F())) {
      try {
        involution_signature(A, P);
      } catch (const Error&) {
        return false;
      }
    }
    for (int it = 0; it < 20; ++it) {
      const Algebra Au = adjoint_involution(A, testing::random_invertible_symmetric(A, rng, 2));
      for (Ordering P : orderings(A.F())) {
        try {
          involution_signature(Au, P);
        } catch (const Error&) {
          return false;
        }
      }
    }
  }
  return true;
}

// 5. Nil tables for the three reference fixtures.
bool run_nil_tables() {
  const Ordering P0{0}, P1{1};
  if (!classify_ordering(testing::m2q_symplectic(), P0).nil) return false;
  const OrderingProfile ham = classify_ordering(testing::hamilton(), P0);
  if (ham.nil || ham.lambda_P != 2) return false;
  const Algebra Q2 = testing::quat_sqrt2();
  if (classify_ordering(Q2, P0).nil) return false;
  if (!classify_ordering(Q2, P1).nil) return false;
  return true;
}

// 6. The constructed one-dimensional form attains ell * M_P at every non-nil ordering.
bool run_attainment() {
  for (const Algebra& A : corpus()) {
    const ReferenceTuple eta = reference_tuple(A);
    for (Ordering P : orderings(A.F())) {
      const OrderingProfile prof = classify_ordering(A, P);
      if (prof.nil) continue;
      const HermitianForm best = maximal_diag_form(A, eta, P);
      if (signed_signature(A, eta, best, P) != int(A.ell) * prof.M_P) return false;
    }
  }
  return true;
}

// 7. Trace-form positivity agrees with eta-maximality on X_sigma (singular included).
bool run_audit() {
  Rng rng(107);
  const std::vector<Algebra> families = {testing::hamilton(),    testing::m2q_transpose(),
                                         testing::m2q_ad_diag(), testing::quat_sqrt2(),
                                         testing::unitary_ext(-3), testing::m2_hamilton()};
  for (const Algebra& A : families) {
    const ReferenceTuple eta = reference_tuple(A);
    for (int it = 0; it < 100; ++it) {
      const AElement u = testing::random_symmetric(A, rng, 3);
      if (!maximality_trace_audit(A, eta, u).all_agree) return false;
    }
  }
  return true;
}

bool try_rational_inverse(const Matrix<Rational>& m) {
  const BaseField Q = BaseField::Q();
  Matrix<FieldElement> f(m.rows(), m.cols(), fe_zero(Q));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f(i, j) = fe(Q, m(i, j));
  return try_inverse(f, fe_zero(Q), fe_one(Q)).has_value();
}

// 8. Split end-to-end: certify/verify plus maximality on PSD and indefinite inputs.
bool run_split_end_to_end() {
  Rng rng(108);
  std::uniform_int_distribution<int> entry(-3, 3);
  const Ordering P0{0};
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + it % 5;
    Matrix<Rational> g(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = entry(rng);
    const Matrix<Rational> u = transpose(g) * g;
    const Algebra A = split_transpose_algebra(n);
    const ReferenceTuple eta = reference_tuple(A);
    SOHSCertificate cert;
    try {
      cert = split_psd_certificate(u);
    } catch (const Error&) {
      return false;
    }
    AElement ue = a_zero(A);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ue(i, j) = d_from_field(A.D, fe(BaseField::Q(), u(i, j)));
    if (!verify_sohs(A, ue, cert)) return false;
    if (!is_maximal_element(A, eta, ue, P0)) return false;
  }
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 2 + it % 4;
    // indefinite by construction: congruence image of diag(1, -1, random)
    Matrix<Rational> d(n, n, Rational(0));
    d(0, 0) = 1;
    d(1, 1) = -1;
    for (std::size_t i = 2; i < n; ++i) d(i, i) = entry(rng);
    Matrix<Rational> g(n, n, Rational(0));
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = entry(rng);
    } while (!try_rational_inverse(g));
    const Matrix<Rational> u = transpose(g) * d * g;
    bool caught = false;
    try {
      split_psd_certificate(u);
    } catch (const Error& e) {
      caught = e.code() == errc::not_psd;
    }
    if (!caught) return false;
    const Algebra A = split_transpose_algebra(n);
    const ReferenceTuple eta = reference_tuple(A);
    AElement ue = a_zero(A);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ue(i, j) = d_from_field(A.D, fe(BaseField::Q(), u(i, j)));
    if (is_maximal_element(A, eta, ue, P0)) return false;
  }
  return true;
}

// 9. The three PS' verdicts.
bool run_biscuit() {
  if (!ps_prime_check(testing::m2q_transpose()).holds) return false;
  const PSVerdict bad = ps_prime_check(testing::m2q_ad_diag());
  if (bad.holds || !bad.witness_ordering || bad.witness_ordering->index != 0) return false;
  if (!ps_prime_check(testing::quat_sqrt2()).holds) return false;
  return true;
}

// 10. Four squares: q in {0..500} and 100 random rationals with num/den <= 10^6.
bool run_four_squares() {
  for (long q = 0; q <= 500; ++q) {
    const auto v = four_squares(Rational(q));
    if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] != Rational(q)) return false;
  }
  Rng rng(110);
  std::uniform_int_distribution<long> big(1, 1000000);
  for (int it = 0; it < 100; ++it) {
    const Rational q = Rational(big(rng)) / Rational(big(rng));
    const auto v = four_squares(q);
    if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] != q) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "diagonalization identity and invertibility (200 per family)", run_diagonalization());
  criterion(2, "Morita round trip and rank multiplicativity (>= 200 forms)", run_morita_roundtrip());
  criterion(3, "signature cross-check against involution trace forms", run_signature_crosscheck());
  criterion(4, "involution trace signatures are perfect squares", run_perfect_squares());
  criterion(5, "nil tables for the reference fixtures", run_nil_tables());
  criterion(6, "maximal signature attainment ell * M_P", run_attainment());
  criterion(7, "trace-form positivity vs maximality audit (100 per family)", run_audit());
  criterion(8, "split certify/verify and maximality end-to-end", run_split_end_to_end());
  criterion(9, "PS' verdicts for the three fixtures", run_biscuit());
  criterion(10, "four-square identities (0..500 and 100 rationals)", run_four_squares());
  return g_failures == 0 ? 0 : 1;
}
