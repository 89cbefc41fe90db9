#include <catch2/catch_amalgamated.hpp>

#include "hermsig/forms.hpp"
#include "test_support.hpp"

using namespace hermsig;
using hermsig::testing::Rng;

TEST_CASE("pfister expansion") {
  const BaseField Q = BaseField::Q();
  auto p1 = pfister({fe_int(Q, 7)});
  REQUIRE(p1.coeffs.size() == 2);
  CHECK(p1.coeffs[0] == fe_one(Q));
  CHECK(p1.coeffs[1] == fe_int(Q, 7));

  auto p2 = pfister({fe_int(Q, -1), fe_int(Q, -1)});
  REQUIRE(p2.coeffs.size() == 4);
  CHECK(p2.coeffs[0] == fe_int(Q, 1));
  CHECK(p2.coeffs[1] == fe_int(Q, -1));
  CHECK(p2.coeffs[2] == fe_int(Q, -1));
  CHECK(p2.coeffs[3] == fe_int(Q, 1));

  CHECK_THROWS_AS(pfister({fe_zero(Q)}), Error);
}

TEST_CASE("harrison sets") {
  const BaseField F = BaseField::Qsqrt(2);
  auto h = harrison({fe(F, Rational(0), Rational(1))});  // sqrt2
  REQUIRE(h.members.size() == 1);
  CHECK(h.members[0].index == 0);
  CHECK(h.contains(Ordering{0}));
  CHECK_FALSE(h.contains(Ordering{1}));
  CHECK_THROWS_AS(harrison({fe_zero(F)}), Error);
}

namespace {

DivisionContext ctx_of(const Algebra& A) { return {A.D, A.theta, A.epsilon}; }

bool check_diagonalization(const DivisionForm& f) {
  auto d = diagonalize(f);
  const Matrix<DElement> lhs =
      theta_transpose(f.ctx.theta, d.transform) * f.gram * d.transform;
  if (!(lhs == d.diagonal_gram(f.ctx.ring))) return false;
  if (!try_inverse(d.transform, d_zero(f.ctx.ring), d_one(f.ctx.ring))) return false;
  for (const auto& e : d.entries) {
    if (!try_inverse(e, d_zero(f.ctx.ring), d_one(f.ctx.ring))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("diagonalize simple examples") {
  const BaseField Q = BaseField::Q();
  DivisionRing D = DivisionRing::split(Q);
  DivisionContext ctx{D, {ThetaKind::identity, {}}, 1};

  Matrix<DElement> g(3, 3, d_zero(D));
  g(0, 0) = d_from_field(D, fe_int(Q, 2));
  g(1, 1) = d_from_field(D, fe_int(Q, -3));
  auto d = diagonalize(division_form(ctx, g));
  REQUIRE(d.entries.size() == 2);
  CHECK(d.entries[0](0, 0) == d_from_field(D, fe_int(Q, 2)));
  CHECK(d.entries[1](0, 0) == d_from_field(D, fe_int(Q, -3)));
  CHECK(d.zero_count == 1);
  CHECK(d.transform == identity_matrix(3, d_one(D), d_zero(D)));
}

TEST_CASE("diagonalize the quaternion hyperbolic example") {
  const Algebra H = testing::hamilton();
  const DElement j = d_gen(H.D, 2);
  Matrix<DElement> g(2, 2, d_zero(H.D));
  g(0, 1) = j;
  g(1, 0) = -j;  // conj(j) = -j, so theta(G)^t = G
  const DivisionForm f = division_form(ctx_of(H), g);
  auto d = diagonalize(f);
  REQUIRE(d.entries.size() == 2);
  CHECK(d.zero_count == 0);
  // first pivot vector is (1, j) with value j*j + conj(j*j) = -2
  CHECK(d.entries[0](0, 0) == d_from_field(H.D, fe_int(BaseField::Q(), -2)));
  CHECK(d.entries[1](0, 0) == d_from_field(H.D, fe(BaseField::Q(), Rational(1) / 2)));
  CHECK(check_diagonalization(f));
}

TEST_CASE("diagonalize the skew split corner") {
  const BaseField Q = BaseField::Q();
  DivisionRing D = DivisionRing::split(Q);
  DivisionContext ctx{D, {ThetaKind::identity, {}}, -1};
  Matrix<DElement> g(2, 2, d_zero(D));
  g(0, 1) = d_one(D);
  g(1, 0) = -d_one(D);
  auto d = diagonalize(division_form(ctx, g));
  CHECK(d.block2);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0].rows() == 2);
  CHECK(d.zero_count == 0);

  // 4x4 singular skew matrix: one block and two zeros
  Matrix<DElement> g4(4, 4, d_zero(D));
  g4(0, 2) = d_from_field(D, fe_int(Q, 3));
  g4(2, 0) = d_from_field(D, fe_int(Q, -3));
  auto d4 = diagonalize(division_form(ctx, g4));
  CHECK(d4.entries.size() == 1);
  CHECK(d4.zero_count == 2);
  CHECK(check_diagonalization(division_form(ctx, g4)));
}

TEST_CASE("diagonalization identity on random hermitian matrices") {
  Rng rng(31);
  std::vector<DivisionContext> contexts = {
      {DivisionRing::split(BaseField::Q()), {ThetaKind::identity, {}}, 1},
      {DivisionRing::split(BaseField::Q()), {ThetaKind::identity, {}}, -1},
      {DivisionRing::split(BaseField::Qsqrt(2)), {ThetaKind::identity, {}}, 1},
      ctx_of(testing::hamilton()),
      ctx_of(testing::quat_sqrt2()),
      ctx_of(testing::unitary_ext(-3)),
      ctx_of(testing::quat_m1_3_twisted()),
  };
  // skew-hermitian forms over the division rings as well
  contexts.push_back({testing::hamilton().D, {ThetaKind::conjugation, {}}, -1});
  for (const auto& ctx : contexts) {
    for (int it = 0; it < 100; ++it) {
      const std::size_t n = 1 + it % 4;
      const DivisionForm f{ctx, testing::random_hermitian_gram(ctx, n, rng, 3)};
      CHECK(check_diagonalization(f));
    }
  }
}

TEST_CASE("division diagonalization matches the field-level routine on split rings") {
  // two independent implementations of the same congruence reduction
  Rng rng(36);
  for (const BaseField& F : {BaseField::Q(), BaseField::Qsqrt(2)}) {
    const DivisionRing D = DivisionRing::split(F);
    const DivisionContext ctx{D, {ThetaKind::identity, {}}, 1};
    for (int it = 0; it < 60; ++it) {
      const std::size_t n = 1 + it % 5;
      const Matrix<DElement> g = testing::random_hermitian_gram(ctx, n, rng, 4);
      const Matrix<FieldElement> m = map_entries(g, [](const DElement& v) { return v.c[0]; });
      auto dd = diagonalize(DivisionForm{ctx, g});
      for (Ordering P : orderings(F)) {
        int div_sig = 0;
        for (const auto& e : dd.entries) div_sig += sign_at(e(0, 0).c[0], P);
        CHECK(div_sig == symmetric_signature(m, P));
      }
      CHECK(dd.rank() == std::size_t(matrix_rank_symmetric(m)));
    }
  }
}

TEST_CASE("nonsingular part examples") {
  const Algebra M2 = testing::m2q_transpose();
  AElement u = a_zero(M2);
  u(0, 0) = d_one(M2.D);
  const HermitianForm h = diag_form(M2, {u});
  CHECK(form_rank(h) == 1);
  CHECK_FALSE(is_nonsingular(h));
  const HermitianForm ns = nonsingular_part(h);
  CHECK(form_rank(ns) == 1);
  // the nonsingular content collapses to <1>
  auto d = diagonalize(division_view(ns));
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0](0, 0) == d_one(M2.D));

  const Algebra H = testing::hamilton();
  const HermitianForm one = one_form(H);
  CHECK(is_nonsingular(one));
  CHECK(nonsingular_part(one).gram == one.gram);

  CHECK(nonsingular_part(zero_form(H)).dim == 0);
}

TEST_CASE("nonsingular part is idempotent in rank and signature data") {
  Rng rng(32);
  for (const Algebra& A : {testing::m2q_transpose(), testing::m2q_ad_diag(),
                           testing::hamilton(), testing::m2_hamilton()}) {
    for (int it = 0; it < 30; ++it) {
      std::vector<AElement> entries;
      for (int k = 0; k < 2; ++k) entries.push_back(testing::random_symmetric(A, rng, 2));
      const HermitianForm h = diag_form(A, entries);
      const HermitianForm ns1 = nonsingular_part(h);
      const HermitianForm ns2 = nonsingular_part(ns1);
      CHECK(form_rank(ns1) == form_rank(h));
      CHECK(form_rank(ns2) == form_rank(ns1));
    }
  }
}

TEST_CASE("form algebra") {
  const Algebra H = testing::hamilton();
  const BaseField Q = BaseField::Q();
  const HermitianForm one = one_form(H);

  const QuadraticFormF q = quadratic_form(Q, {fe_one(Q), fe_one(Q)});
  const HermitianForm t = tensor(q, one);
  CHECK(t.dim == 2);
  CHECK(t.gram == diag_form(H, {a_one(H), a_one(H)}).gram);

  CHECK(orth_sum(t, one_form(H)).dim == 3);
  CHECK(scale_by(fe_int(Q, -1), one).gram == diag_form_scalars(H, {fe_int(Q, -1)}).gram);
  CHECK_THROWS_AS(scale_by(fe_zero(Q), one), Error);

  const Algebra M2 = testing::m2q_transpose();
  CHECK_THROWS_AS(orth_sum(one, one_form(M2)), Error);
}

TEST_CASE("evaluate and represents") {
  const BaseField Q = BaseField::Q();
  DivisionRing D = DivisionRing::split(Q);
  Algebra A1 = make_algebra(D, {ThetaKind::identity, {}}, 1, testing::unit_phi(D, 1));
  const HermitianForm two_ones = diag_form(A1, {a_one(A1), a_one(A1)});
  AElement x3 = scale_left(d_from_field(D, fe_int(Q, 3)), a_one(A1));
  AElement x4 = scale_left(d_from_field(D, fe_int(Q, 4)), a_one(A1));
  CHECK(evaluate(two_ones, {x3, x4}) == scale_left(d_from_field(D, fe_int(Q, 25)), a_one(A1)));

  const Algebra H = testing::hamilton();
  AElement xi = a_zero(H);
  xi(0, 0) = d_gen(H.D, 1);
  CHECK(evaluate(one_form(H), {xi}) == a_one(H));

  // the norm form of the Hamilton quaternions never represents -1
  Rng rng(33);
  const AElement minus_one = -a_one(H);
  for (int it = 0; it < 100; ++it) {
    const AElement x = testing::random_aelement(H, rng, 4);
    CHECK_FALSE(represents(one_form(H), minus_one, {x}));
  }
  CHECK_THROWS_AS(evaluate(one_form(H), {xi, xi}), Error);
}

TEST_CASE("evaluate on basis vectors reads off the Gram matrix") {
  Rng rng(35);
  for (const Algebra& A : {testing::m2q_ad_diag(), testing::m2_hamilton()}) {
    std::vector<AElement> entries = {testing::random_symmetric(A, rng, 2),
                                     testing::random_symmetric(A, rng, 2)};
    const HermitianForm h = diag_form(A, entries);
    for (std::size_t I = 0; I < h.dim; ++I) {
      std::vector<AElement> e(h.dim, a_zero(A));
      e[I] = a_one(A);
      CHECK(evaluate(h, e) == h.block(I, I));
    }
  }
}

TEST_CASE("represented elements are symmetric") {
  Rng rng(34);
  for (const Algebra& A : {testing::hamilton(), testing::m2q_transpose(),
                           testing::m2_hamilton(), testing::unitary_ext(-3)}) {
    const HermitianForm h = diag_form(A, {testing::random_symmetric(A, rng, 2),
                                          testing::random_symmetric(A, rng, 2)});
    for (int it = 0; it < 50; ++it) {
      std::vector<AElement> x = {testing::random_aelement(A, rng, 3),
                                 testing::random_aelement(A, rng, 3)};
      CHECK(is_symmetric_element(A, evaluate(h, x)));
    }
  }
}
