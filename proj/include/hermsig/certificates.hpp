// Weighted sums of hermitian squares: exact verification, the constructive
// certificate for positive semidefinite rational matrices in (M_n(Q), t)
// (congruence LDL^t plus Lagrange four-square decompositions of the diagonal),
// and a best-effort bounded search over division algebras.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermsig/algebras.hpp"
#include "hermsig/enumerate.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/fields.hpp"
#include "hermsig/forms.hpp"
#include "hermsig/positivity.hpp"
#include "hermsig/rational.hpp"
#include "hermsig/signatures.hpp"

namespace hermsig {

// ---------------------------------------------------------------------------
// Exact four-square decompositions

namespace foursq {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    const std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (std::uint64_t q = std::uint64_t(p) * p; q <= limit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

// Deterministic Miller-Rabin, valid far beyond the 10^12 inputs produced here.
inline bool is_probable_prime(const BigInt& n) {
  static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (int b : bases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  BigInt d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (int b : bases) {
    BigInt x = boost::multiprecision::powm(BigInt(b), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = (x * x) % n;
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

// Tonelli-Shanks square root modulo an odd prime (a must be a residue).
inline BigInt sqrt_mod(BigInt a, const BigInt& p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  using boost::multiprecision::powm;
  if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
  BigInt z = 2;
  while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
  BigInt q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  int m = s;
  BigInt c = powm(z, q, p);
  BigInt t = powm(a, q, p);
  BigInt r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    BigInt tt = t;
    int i = 0;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    BigInt b = powm(c, BigInt(1) << (m - i - 1), p);
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

using Quad = std::array<BigInt, 4>;

inline Quad quat_mul(const Quad& u, const Quad& v) {
  return {u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3],
          u[0] * v[1] + u[1] * v[0] + u[2] * v[3] - u[3] * v[2],
          u[0] * v[2] + u[2] * v[0] + u[3] * v[1] - u[1] * v[3],
          u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1]};
}

inline Quad quat_conj(const Quad& u) { return {u[0], -u[1], -u[2], -u[3]}; }

inline Quad canonical(Quad v) {
  for (auto& c : v)
    if (c < 0) c = -c;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[j] > v[i]) std::swap(v[i], v[j]);
  return v;
}

// Greedy descending search a >= b >= c >= d; first hit in this order.
inline Quad brute_force(const BigInt& n) {
  for (BigInt a = isqrt_floor(n); a >= 0; --a) {
    const BigInt ra = n - a * a;
    BigInt b = isqrt_floor(ra);
    if (b > a) b = a;
    for (; b >= 0; --b) {
      const BigInt rb = ra - b * b;
      BigInt c = isqrt_floor(rb);
      if (c > b) c = b;
      for (; c >= 0; --c) {
        const BigInt rc = rb - c * c;
        if (rc > c * c) break;  // would need d > c
        if (is_perfect_square(rc)) return {a, b, c, isqrt_floor(rc)};
      }
    }
  }
  fail(errc::search_exhausted, "four-square brute force failed");  // unreachable
}

// Lagrange descent for an odd prime: start from x^2 + y^2 + 1 = m*p and shrink m.
inline Quad prime_quad(const BigInt& p) {
  if (p == 2) return {1, 1, 0, 0};
  if (p < 20000) return brute_force(p);
  using boost::multiprecision::powm;
  BigInt x = 0, y = 0;
  for (;; ++x) {
    BigInt t = (p - 1 - (x * x) % p) % p;
    if (t < 0) t += p;
    if (t == 0) {
      y = 0;
      break;
    }
    if (powm(t, (p - 1) / 2, p) == 1) {
      y = sqrt_mod(t, p);
      if (2 * y > p) y = p - y;
      break;
    }
  }
  Quad v = {x, y, 1, 0};
  BigInt m = (x * x + y * y + 1) / p;
  while (m > 1) {
    if (m % 2 == 0) {
      // pair up coordinates of equal parity and halve m
      std::vector<int> odd, even;
      for (int i = 0; i < 4; ++i) ((v[i] % 2 != 0) ? odd : even).push_back(i);
      Quad w = {0, 0, 0, 0};
      int slot = 0;
      auto emit = [&](int a, int b) {
        w[slot++] = (v[a] + v[b]) / 2;
        w[slot++] = (v[a] - v[b]) / 2;
      };
      for (std::size_t i = 0; i + 1 < odd.size(); i += 2) emit(odd[i], odd[i + 1]);
      for (std::size_t i = 0; i + 1 < even.size(); i += 2) emit(even[i], even[i + 1]);
      v = w;
      m /= 2;
      continue;
    }
    Quad w;
    for (int i = 0; i < 4; ++i) {
      BigInt r = v[i] % m;
      if (r < 0) r += m;
      if (2 * r > m) r -= m;
      w[i] = r;
    }
    const BigInt r = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]) / m;
    Quad prod = quat_mul(v, quat_conj(w));
    for (auto& c : prod) c /= m;  // all coordinates are divisible by m
    v = prod;
    m = r;
  }
  return v;
}

inline Quad natural_quad(const BigInt& n) {
  if (n == 0) return {0, 0, 0, 0};
  if (n <= 20000) return brute_force(n);

  std::vector<std::pair<BigInt, int>> factors;
  BigInt rem = n;
  for (std::uint32_t p : small_primes()) {
    if (BigInt(p) * p > rem) break;
    if (rem % p != 0) continue;
    int e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    factors.emplace_back(BigInt(p), e);
    if (rem == 1 || is_probable_prime(rem)) break;
  }
  if (rem > 1) {
    if (!is_probable_prime(rem))
      fail(errc::search_exhausted, "operand out of the supported factorization range");
    factors.emplace_back(rem, 1);
  }

  Quad acc = {1, 0, 0, 0};
  for (const auto& [p, e] : factors) {
    const Quad rep = prime_quad(p);
    for (int i = 0; i < e; ++i) acc = quat_mul(acc, rep);
  }
  acc = canonical(acc);
  if (acc[0] * acc[0] + acc[1] * acc[1] + acc[2] * acc[2] + acc[3] * acc[3] != n)
    fail(errc::search_exhausted, "four-square identity check failed");
  return acc;
}

}  // namespace foursq

// q = a^2 + b^2 + c^2 + d^2 exactly, for a non-negative rational q.
inline std::array<Rational, 4> four_squares(const Rational& q) {
  if (q < 0) throw std::invalid_argument("four_squares of a negative rational");
  if (q == 0) return {Rational(0), Rational(0), Rational(0), Rational(0)};
  const BigInt den = denominator(q);
  const foursq::Quad nat = foursq::natural_quad(numerator(q) * den);
  std::array<Rational, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = Rational(nat[i]) / Rational(den);
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

// u = sum_e b^e sum_i sigma(x_{i,e}) a x_{i,e}; the key of terms is the bitstring of
// e over the weights (empty string when there are no weights).
struct SOHSCertificate {
  AElement a;
  std::vector<FieldElement> weights;
  int exponent = 0;
  std::map<std::string, std::vector<AElement>> terms;
};

inline bool verify_sohs(const Algebra& A, const AElement& u, const SOHSCertificate& cert) {
  check_element(A, u);
  check_element(A, cert.a);
  if (!is_symmetric_element(A, cert.a))
    fail(errc::malformed_certificate, "base element a is not sigma-symmetric");
  if (!try_inverse(cert.a, d_zero(A.D), d_one(A.D)))
    fail(errc::malformed_certificate, "base element a is singular");
  if (cert.exponent < 0 || cert.exponent > 62)
    fail(errc::malformed_certificate, "exponent out of range");
  for (const auto& w : cert.weights) {
    if (w.field != A.F()) fail(errc::malformed_certificate, "weight over a different field");
    if (w.is_zero()) fail(errc::malformed_certificate, "zero weight");
  }
  const std::size_t t = cert.weights.size();
  const std::uint64_t cap = std::uint64_t(1) << cert.exponent;

  AElement acc = a_zero(A);
  for (const auto& [bits, xs] : cert.terms) {
    if (bits.size() != t) fail(errc::malformed_certificate, "weight selector of wrong length");
    FieldElement w = fe_one(A.F());
    for (std::size_t i = 0; i < t; ++i) {
      if (bits[i] == '1')
        w = w * cert.weights[i];
      else if (bits[i] != '0')
        fail(errc::malformed_certificate, "weight selector must be a 0/1 string");
    }
    if (xs.size() > cap) fail(errc::malformed_certificate, "too many terms for the exponent");
    AElement inner = a_zero(A);
    for (const auto& x : xs) {
      check_element(A, x);
      inner = inner + apply_sigma(A, x) * cert.a * x;
    }
    acc = acc + scale_left(d_from_field(A.D, w), inner);
  }
  return acc == u;
}

inline Algebra split_transpose_algebra(std::size_t n) {
  const DivisionRing D = DivisionRing::split(BaseField::Q());
  return make_algebra(D, CanonicalTheta{ThetaKind::identity, {}}, n,
                      identity_matrix(n, d_one(D), d_zero(D)));
}

// U = sum_i X_i^t X_i for a positive semidefinite symmetric rational matrix:
// congruence-diagonalize U = R^t Delta R, split each diagonal entry into four
// rational squares, and emit one rank-one matrix per square.
inline SOHSCertificate split_psd_certificate(const Matrix<Rational>& U) {
  if (!U.square()) fail(errc::dimension_mismatch, "matrix must be square");
  const std::size_t n = U.rows();
  const BaseField F = BaseField::Q();
  Matrix<FieldElement> m(n, n, fe_zero(F));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = fe(F, U(i, j));

  auto diag = symmetric_diagonalize(m);
  for (const auto& v : diag.diagonal)
    if (sign_of(v.a) < 0)
      fail(errc::not_psd, "matrix is not positive semidefinite (inertia entry " +
                              format_rational(v.a) + ")");

  const Matrix<FieldElement> R = inverse(diag.transform, fe_zero(F), fe_one(F));
  const Algebra A = split_transpose_algebra(n);

  std::vector<AElement> terms;
  for (std::size_t i = 0; i < n; ++i) {
    if (diag.diagonal[i].is_zero()) continue;
    const auto squares = four_squares(diag.diagonal[i].a);
    for (const auto& q : squares) {
      if (q == 0) continue;
      AElement x = a_zero(A);
      for (std::size_t j = 0; j < n; ++j) x(i, j) = d_from_field(A.D, fe(F, q * R(i, j).a));
      terms.push_back(x);
    }
  }

  int exponent = 0;
  while ((std::size_t(1) << exponent) < terms.size()) ++exponent;

  SOHSCertificate cert{a_one(A), {}, exponent, {}};
  cert.terms[""] = terms;

  AElement check = a_zero(A);
  for (const auto& x : terms) check = check + apply_sigma(A, x) * x;
  Matrix<DElement> expect(n, n, d_zero(A.D));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) expect(i, j) = d_from_field(A.D, fe(F, U(i, j)));
  if (!(check == expect)) fail(errc::not_psd, "internal certificate check failed");
  return cert;
}

// ---------------------------------------------------------------------------
// Bounded best-effort search (failure is not a proof of non-representability)

namespace detail {

// The F-valued reduced trace of a sigma-symmetric element.
inline FieldElement trd_f(const Algebra& A, const AElement& x) {
  const DElement t = reduced_trace(A, x);
  if (A.second_kind() && !t.c[1].is_zero())
    fail(errc::not_symmetric, "reduced trace is not fixed by the involution");
  return t.c[0];
}

struct SohsSearch {
  const Algebra& A;
  std::vector<AElement> cand_elems;
  std::vector<std::vector<AElement>> values;  // [e][candidate]
  std::vector<Ordering> prune_orderings;
  std::vector<std::vector<std::size_t>> chosen;
  std::size_t cap_per_e = 0;
  std::uint64_t budget = 0;
  bool exhausted = false;

  bool dfs(std::size_t e_idx, std::size_t min_ci, const AElement& residual) {
    if (is_zero_matrix(residual)) return true;
    if (budget == 0) {
      exhausted = true;
      return false;
    }
    --budget;
    const FieldElement tr = trd_f(A, residual);
    for (Ordering P : prune_orderings)
      if (sign_at(tr, P) < 0) return false;
    if (e_idx == values.size()) return false;
    if (dfs(e_idx + 1, 0, residual)) return true;
    if (exhausted) return false;
    if (chosen[e_idx].size() < cap_per_e) {
      for (std::size_t ci = min_ci; ci < values[e_idx].size(); ++ci) {
        chosen[e_idx].push_back(ci);
        if (dfs(e_idx, ci, residual - values[e_idx][ci])) return true;
        chosen[e_idx].pop_back();
        if (exhausted) return false;
      }
    }
    return false;
  }
};

}  // namespace detail

// Enumerates terms with integer coordinates of height at most height_bound (at most
// cand_cap distinct term values) and searches for an exact representation with at
// most 2^max_exponent terms per weight product. Deterministic; a nullopt result is
// inconclusive by design.
inline std::optional<SOHSCertificate> bounded_search(const Algebra& A, const AElement& u,
                                                     const AElement& a,
                                                     const std::vector<FieldElement>& weights,
                                                     int max_exponent, int height_bound,
                                                     std::uint64_t node_budget = 200000,
                                                     std::size_t cand_cap = 1024) {
  check_element(A, u);
  check_element(A, a);
  if (!is_symmetric_element(A, u)) fail(errc::not_symmetric, "u is not sigma-symmetric");
  if (!is_symmetric_element(A, a)) fail(errc::not_symmetric, "a is not sigma-symmetric");
  if (max_exponent < 0 || max_exponent > 20) fail(errc::malformed_certificate, "exponent bound");
  for (const auto& w : weights)
    if (w.is_zero()) fail(errc::zero_coefficient, "zero weight");

  // The split transpose case has the exact constructive route.
  if (A.D.kind == DivisionKind::split && A.theta.kind == ThetaKind::identity &&
      is_theta_t_shaped(A) && A.F() == BaseField::Q() && weights.empty() && a == a_one(A)) {
    Matrix<Rational> U(A.ell, A.ell, Rational(0));
    for (std::size_t i = 0; i < A.ell; ++i)
      for (std::size_t j = 0; j < A.ell; ++j) U(i, j) = u(i, j).c[0].a;
    try {
      return split_psd_certificate(U);
    } catch (const Error& e) {
      if (e.code() == errc::not_psd) return std::nullopt;
      throw;
    }
  }

  detail::SohsSearch search{A, {}, {}, {}, {}, std::size_t(1) << max_exponent, node_budget};

  // candidate values sigma(x) a x, deduplicated, in graded enumeration order
  std::vector<AElement> base_values;
  graded_tuples(A.dim_over_f(), height_bound, [&](const std::vector<std::int64_t>& cs) {
    AElement x = a_zero(A);
    bool nonzero = false;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < A.ell; ++i)
      for (std::size_t j = 0; j < A.ell; ++j)
        for (std::size_t g = 0; g < A.D.coord_count(); ++g, ++idx) {
          if (cs[idx] == 0) continue;
          x(i, j).c[g] = fe_int(A.F(), long(cs[idx]));
          nonzero = true;
        }
    if (!nonzero) return false;
    AElement v = apply_sigma(A, x) * a * x;
    if (is_zero_matrix(v)) return false;
    for (const auto& seen : base_values)
      if (seen == v) return false;
    base_values.push_back(v);
    search.cand_elems.push_back(x);
    return search.cand_elems.size() >= cand_cap;
  });

  const std::size_t t = weights.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << t); ++mask) {
    FieldElement w = fe_one(A.F());
    for (std::size_t i = 0; i < t; ++i)
      if (mask & (std::size_t(1) << i)) w = w * weights[i];
    std::vector<AElement> vals;
    vals.reserve(base_values.size());
    for (const auto& v : base_values) vals.push_back(scale_left(d_from_field(A.D, w), v));
    search.values.push_back(std::move(vals));
  }
  search.chosen.assign(search.values.size(), {});

  // orderings where every candidate value has non-negative reduced trace support the
  // trace prune on residuals
  for (Ordering P : orderings(A.F())) {
    bool ok = true;
    for (const auto& group : search.values)
      for (const auto& v : group) ok = ok && sign_at(detail::trd_f(A, v), P) >= 0;
    if (ok) search.prune_orderings.push_back(P);
  }

  if (!search.dfs(0, 0, u)) return std::nullopt;

  SOHSCertificate cert{a, weights, 0, {}};
  std::size_t max_count = 1;
  for (std::size_t mask = 0; mask < search.chosen.size(); ++mask) {
    if (search.chosen[mask].empty()) continue;
    std::string bits(t, '0');
    for (std::size_t i = 0; i < t; ++i)
      if (mask & (std::size_t(1) << i)) bits[i] = '1';
    auto& xs = cert.terms[bits];
    for (std::size_t ci : search.chosen[mask]) xs.push_back(search.cand_elems[ci]);
    max_count = std::max(max_count, xs.size());
  }
  while ((std::size_t(1) << cert.exponent) < max_count) ++cert.exponent;
  if (!verify_sohs(A, u, cert))
    fail(errc::malformed_certificate, "internal search produced an invalid certificate");
  return cert;
}

}  // namespace hermsig
