// JSON encodings: rationals as "p/q" strings, field elements as [a, b], division
// ring elements as coordinate arrays, algebra elements as ell x ell nested arrays.
// Well-known fixture algebras can be named by a string id instead of a descriptor.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "hermsig/algebras.hpp"
#include "hermsig/certificates.hpp"
#include "hermsig/errors.hpp"
#include "hermsig/fields.hpp"
#include "hermsig/forms.hpp"

namespace hermsig {

using njson = nlohmann::json;

inline Rational json_to_rational(const njson& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(errc::parse_error, "expected a rational (integer or \"p/q\" string)");
}

inline njson rational_to_json(const Rational& r) { return format_rational(r); }

inline FieldElement json_to_fe(const njson& j, const BaseField& F) {
  if (j.is_array()) {
    if (j.empty() || j.size() > 2) fail(errc::parse_error, "field element must be [a] or [a, b]");
    Rational a = json_to_rational(j[0]);
    Rational b = j.size() == 2 ? json_to_rational(j[1]) : Rational(0);
    return fe(F, a, b);
  }
  return fe(F, json_to_rational(j));
}

inline njson fe_to_json(const FieldElement& x) {
  return njson::array({rational_to_json(x.a), rational_to_json(x.b)});
}

inline DElement json_to_delement(const njson& j, const DivisionRing& ring) {
  if (!j.is_array()) return d_from_field(ring, fe(ring.field, json_to_rational(j)));
  if (j.size() == ring.coord_count()) {
    DElement out = d_zero(ring);
    for (std::size_t i = 0; i < ring.coord_count(); ++i) out.c[i] = json_to_fe(j[i], ring.field);
    return out;
  }
  if (ring.coord_count() == 1 && j.size() == 2)  // a bare field element [a, b]
    return d_from_field(ring, json_to_fe(j, ring.field));
  fail(errc::parse_error, "division ring element has the wrong coordinate count");
}

inline njson delement_to_json(const DElement& x) {
  njson out = njson::array();
  for (const auto& c : x.c) out.push_back(fe_to_json(c));
  return out;
}

inline AElement json_to_aelement(const njson& j, const Algebra& A) {
  auto looks_like_matrix = [&](const njson& v) {
    if (!v.is_array() || v.size() != A.ell) return false;
    for (const auto& row : v)
      if (!row.is_array() || row.size() != A.ell) return false;
    // for ell = 1 a flat coordinate array also matches; require one more nesting level
    if (A.ell == 1) return v[0].empty() || v[0][0].is_array() || A.D.coord_count() == 1;
    return true;
  };
  if (A.ell == 1 && !looks_like_matrix(j)) {
    AElement m = a_zero(A);
    m(0, 0) = json_to_delement(j, A.D);
    return m;
  }
  if (!looks_like_matrix(j)) fail(errc::parse_error, "algebra element must be an ell x ell array");
  AElement m = a_zero(A);
  for (std::size_t i = 0; i < A.ell; ++i)
    for (std::size_t jj = 0; jj < A.ell; ++jj) m(i, jj) = json_to_delement(j[i][jj], A.D);
  return m;
}

inline njson aelement_to_json(const AElement& x) {
  njson out = njson::array();
  for (std::size_t i = 0; i < x.rows(); ++i) {
    njson row = njson::array();
    for (std::size_t j = 0; j < x.cols(); ++j) row.push_back(delement_to_json(x(i, j)));
    out.push_back(row);
  }
  return out;
}

inline BaseField json_to_field(const njson& j) {
  if (!j.is_object() || !j.contains("kind")) fail(errc::parse_error, "field descriptor needs a kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "Q") return BaseField::Q();
  if (kind == "Qsqrt") {
    if (!j.contains("d")) fail(errc::parse_error, "Qsqrt needs d");
    return BaseField::Qsqrt(j["d"].get<std::int64_t>());
  }
  fail(errc::parse_error, "unknown field kind '" + kind + "'");
}

inline njson field_to_json(const BaseField& f) {
  if (f.kind == FieldKind::rationals) return njson{{"kind", "Q"}};
  return njson{{"kind", "Qsqrt"}, {"d", f.d}};
}

inline Algebra fixture_algebra(const std::string& id);

inline Algebra json_to_algebra(const njson& j) {
  if (j.is_string()) return fixture_algebra(j.get<std::string>());
  if (!j.is_object()) fail(errc::parse_error, "algebra descriptor must be an object or id");
  for (const char* key : {"field", "division", "ell", "phi"})
    if (!j.contains(key)) fail(errc::parse_error, std::string("algebra descriptor needs ") + key);

  const BaseField F = json_to_field(j["field"]);
  const njson& dj = j["division"];
  if (!dj.is_object() || !dj.contains("kind"))
    fail(errc::parse_error, "division descriptor needs a kind");
  const std::string kind = dj["kind"].get<std::string>();

  DivisionRing D = DivisionRing::split(F);
  CanonicalTheta theta{ThetaKind::identity, {}};
  if (kind == "split") {
    // defaults above
  } else if (kind == "quaternion") {
    if (!dj.contains("a") || !dj.contains("b")) fail(errc::parse_error, "quaternion needs a, b");
    D = DivisionRing::quaternion(json_to_fe(dj["a"], F), json_to_fe(dj["b"], F));
    theta = CanonicalTheta{ThetaKind::conjugation, {}};
    if (dj.contains("s")) {
      theta = CanonicalTheta{ThetaKind::twisted_conjugation, json_to_delement(dj["s"], D)};
    }
  } else if (kind == "quadratic_ext") {
    if (!dj.contains("delta")) fail(errc::parse_error, "quadratic_ext needs delta");
    D = DivisionRing::quadratic_ext(json_to_fe(dj["delta"], F));
    theta = CanonicalTheta{ThetaKind::conjugation, {}};
  } else {
    fail(errc::parse_error, "unknown division kind '" + kind + "'");
  }

  const std::size_t ell = j["ell"].get<std::size_t>();
  const njson& pj = j["phi"];
  if (!pj.is_array() || pj.size() != ell) fail(errc::parse_error, "phi must be an ell x ell array");
  Matrix<DElement> phi(ell, ell, d_zero(D));
  for (std::size_t i = 0; i < ell; ++i) {
    if (!pj[i].is_array() || pj[i].size() != ell)
      fail(errc::parse_error, "phi must be an ell x ell array");
    for (std::size_t jj = 0; jj < ell; ++jj) phi(i, jj) = json_to_delement(pj[i][jj], D);
  }
  return make_algebra(D, theta, ell, phi);
}

inline njson algebra_to_json(const Algebra& A) {
  njson dj;
  switch (A.D.kind) {
    case DivisionKind::split: dj = njson{{"kind", "split"}}; break;
    case DivisionKind::quaternion:
      dj = njson{{"kind", "quaternion"}, {"a", fe_to_json(*A.D.a)}, {"b", fe_to_json(*A.D.b)}};
      if (A.theta.kind == ThetaKind::twisted_conjugation)
        dj["s"] = delement_to_json(*A.theta.s);
      break;
    case DivisionKind::quadratic_ext:
      dj = njson{{"kind", "quadratic_ext"}, {"delta", fe_to_json(*A.D.delta)}};
      break;
  }
  njson phi = njson::array();
  for (std::size_t i = 0; i < A.ell; ++i) {
    njson row = njson::array();
    for (std::size_t j = 0; j < A.ell; ++j) row.push_back(delement_to_json(A.phi(i, j)));
    phi.push_back(row);
  }
  return njson{{"field", field_to_json(A.F())},
               {"division", dj},
               {"ell", A.ell},
               {"phi", phi}};
}

inline Algebra fixture_algebra(const std::string& id) {
  const BaseField Q = BaseField::Q();
  auto unit_phi = [](const DivisionRing& D, std::size_t n) {
    return identity_matrix(n, d_one(D), d_zero(D));
  };
  if (id == "hamilton") {
    DivisionRing D = DivisionRing::quaternion(fe_int(Q, -1), fe_int(Q, -1));
    return make_algebra(D, {ThetaKind::conjugation, {}}, 1, unit_phi(D, 1));
  }
  if (id == "m2q_transpose") {
    DivisionRing D = DivisionRing::split(Q);
    return make_algebra(D, {ThetaKind::identity, {}}, 2, unit_phi(D, 2));
  }
  if (id == "m2q_ad_diag_1_m1") {
    DivisionRing D = DivisionRing::split(Q);
    Matrix<DElement> phi(2, 2, d_zero(D));
    phi(0, 0) = d_from_field(D, fe_int(Q, 1));
    phi(1, 1) = d_from_field(D, fe_int(Q, -1));
    return make_algebra(D, {ThetaKind::identity, {}}, 2, phi);
  }
  if (id == "m2q_symplectic") {
    DivisionRing D = DivisionRing::split(Q);
    Matrix<DElement> phi(2, 2, d_zero(D));
    phi(0, 1) = d_from_field(D, fe_int(Q, 1));
    phi(1, 0) = d_from_field(D, fe_int(Q, -1));
    return make_algebra(D, {ThetaKind::identity, {}}, 2, phi);
  }
  if (id == "quat_conj_sqrt2") {
    const BaseField F2 = BaseField::Qsqrt(2);
    DivisionRing D = DivisionRing::quaternion(fe_int(F2, -1), fe(F2, Rational(0), Rational(-1)));
    return make_algebra(D, {ThetaKind::conjugation, {}}, 1, unit_phi(D, 1));
  }
  if (id == "unitary_qsqrt_m3") {
    DivisionRing D = DivisionRing::quadratic_ext(fe_int(Q, -3));
    return make_algebra(D, {ThetaKind::conjugation, {}}, 1, unit_phi(D, 1));
  }
  if (id == "unitary_qsqrt_5") {
    DivisionRing D = DivisionRing::quadratic_ext(fe_int(Q, 5));
    return make_algebra(D, {ThetaKind::conjugation, {}}, 1, unit_phi(D, 1));
  }
  fail(errc::parse_error, "unknown algebra id '" + id + "'");
}

inline HermitianForm json_to_form(const njson& j) {
  if (!j.is_object() || !j.contains("algebra"))
    fail(errc::parse_error, "form descriptor needs an algebra");
  const Algebra A = json_to_algebra(j["algebra"]);
  const int epsilon = j.value("epsilon", 1);
  if (j.contains("gram")) {
    const njson& gj = j["gram"];
    if (!gj.is_array()) fail(errc::parse_error, "gram must be a k x k array");
    const std::size_t k = gj.size();
    std::vector<std::vector<AElement>> blocks(k);
    for (std::size_t I = 0; I < k; ++I) {
      if (!gj[I].is_array() || gj[I].size() != k)
        fail(errc::parse_error, "gram must be a k x k array");
      for (std::size_t J = 0; J < k; ++J) blocks[I].push_back(json_to_aelement(gj[I][J], A));
    }
    return form_from_blocks(A, blocks, epsilon);
  }
  if (j.contains("u")) return diag_form(A, {json_to_aelement(j["u"], A)});
  fail(errc::parse_error, "form descriptor needs gram or u");
}

inline njson form_to_json(const HermitianForm& h) {
  njson gram = njson::array();
  for (std::size_t I = 0; I < h.dim; ++I) {
    njson row = njson::array();
    for (std::size_t J = 0; J < h.dim; ++J) row.push_back(aelement_to_json(h.block(I, J)));
    gram.push_back(row);
  }
  return njson{{"algebra", algebra_to_json(h.algebra)}, {"gram", gram}, {"epsilon", h.epsilon}};
}

inline SOHSCertificate json_to_certificate(const njson& j, const Algebra& A) {
  if (!j.is_object()) fail(errc::parse_error, "certificate must be an object");
  SOHSCertificate cert{a_one(A), {}, 0, {}};
  if (j.contains("a")) cert.a = json_to_aelement(j["a"], A);
  if (j.contains("weights"))
    for (const auto& w : j["weights"]) cert.weights.push_back(json_to_fe(w, A.F()));
  cert.exponent = j.value("exponent", 0);
  if (j.contains("terms")) {
    if (!j["terms"].is_object()) fail(errc::parse_error, "terms must map bitstrings to lists");
    for (const auto& [bits, xs] : j["terms"].items()) {
      std::vector<AElement> group;
      for (const auto& x : xs) group.push_back(json_to_aelement(x, A));
      cert.terms[bits] = std::move(group);
    }
  }
  return cert;
}

inline njson certificate_to_json(const SOHSCertificate& cert) {
  njson terms = njson::object();
  for (const auto& [bits, xs] : cert.terms) {
    njson group = njson::array();
    for (const auto& x : xs) group.push_back(aelement_to_json(x));
    terms[bits] = group;
  }
  njson weights = njson::array();
  for (const auto& w : cert.weights) weights.push_back(fe_to_json(w));
  return njson{{"a", aelement_to_json(cert.a)},
               {"weights", weights},
               {"exponent", cert.exponent},
               {"terms", terms}};
}

inline Matrix<Rational> json_to_rational_matrix(const njson& j) {
  if (!j.is_array() || j.empty()) fail(errc::parse_error, "expected a nested array matrix");
  const std::size_t n = j.size();
  Matrix<Rational> m(n, j[0].size(), Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols())
      fail(errc::parse_error, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = json_to_rational(j[i][c]);
  }
  return m;
}

}  // namespace hermsig
