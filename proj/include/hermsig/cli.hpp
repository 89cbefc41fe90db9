// Command-line front end: load JSON descriptors, run the requested computation and
// emit a deterministic report. Exit codes: 0 success, 2 domain errors, 64 parse
// errors, 70 internal contract violations.
#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "hermsig/certificates.hpp"
#include "hermsig/json_io.hpp"
#include "hermsig/morita.hpp"
#include "hermsig/positivity.hpp"
#include "hermsig/signatures.hpp"

namespace hermsig {

struct Request {
  std::string subcommand;
  std::string input_path;
  std::optional<int> ordering;
  bool json_output = false;
  std::uint64_t seed = 0;  // reserved for randomized strategies; the search is deterministic
  int height_bound = 2;
  int max_exponent = 3;
};

struct RunResult {
  int exit_code = 0;
  std::string output;
};

namespace cli_detail {

inline njson load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open input file '" + path + "'");
  try {
    njson j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    fail(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string pkey(Ordering P) { return "P" + std::to_string(P.index); }

inline std::vector<Ordering> selected_orderings(const BaseField& F, const std::optional<int>& sel) {
  const auto all = orderings(F);
  if (!sel) return all;
  for (Ordering P : all)
    if (P.index == *sel) return {P};
  fail(errc::parse_error, "ordering index out of range for this field");
}

inline Algebra algebra_of(const njson& input) {
  if (input.is_object() && input.contains("algebra")) return json_to_algebra(input["algebra"]);
  return json_to_algebra(input);
}

inline njson fe_matrix_to_json(const Matrix<FieldElement>& m) {
  njson out = njson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    njson row = njson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(fe_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline njson run_classify(const njson& input, const Request& req) {
  const Algebra A = algebra_of(input);
  njson out = njson::object();
  for (Ordering P : selected_orderings(A.F(), req.ordering)) {
    const OrderingProfile prof = classify_ordering(A, P);
    out[pkey(P)] = njson{{"nil", prof.nil},   {"epsP", prof.eps_P}, {"lambda", prof.lambda_P},
                         {"nP", prof.n_P},    {"MP", prof.M_P},     {"mP", prof.m_P},
                         {"cP", prof.c_P}};
  }
  return out;
}

inline njson run_signature(const njson& input, const Request& req) {
  const HermitianForm h = json_to_form(input);
  const Algebra& A = h.algebra;
  const ReferenceTuple eta = reference_tuple(A);
  njson out = njson::object();
  for (Ordering P : selected_orderings(A.F(), req.ordering)) {
    const OrderingProfile prof = classify_ordering(A, P);
    out[pkey(P)] = njson{{"nil", prof.nil}, {"signed", signed_signature(A, eta, h, P)}};
  }
  out["dim"] = h.dim;
  out["rank"] = form_rank(h);
  out["reference_forms"] = eta.forms.size();
  return out;
}

inline njson run_maximal(const njson& input, const Request& req) {
  const HermitianForm h = json_to_form(input);
  const Algebra& A = h.algebra;
  const ReferenceTuple eta = reference_tuple(A);
  njson out = njson::object();
  for (Ordering P : selected_orderings(A.F(), req.ordering))
    out[pkey(P)] = is_maximal_form(A, eta, h, P);
  return out;
}

inline njson run_trace_form(const njson& input, const Request& req) {
  const Algebra A = algebra_of(input);
  const AElement u = (input.is_object() && input.contains("u"))
                         ? json_to_aelement(input["u"], A)
                         : a_one(A);
  const TraceForm t = trace_form(A, u);
  njson out;
  out["kind"] = A.second_kind() ? "second" : "first";
  out["gram"] = fe_matrix_to_json(t.f_gram);
  if (t.k_gram) {
    njson kg = njson::array();
    for (std::size_t i = 0; i < t.k_gram->rows(); ++i) {
      njson row = njson::array();
      for (std::size_t j = 0; j < t.k_gram->cols(); ++j)
        row.push_back(delement_to_json((*t.k_gram)(i, j)));
      kg.push_back(row);
    }
    out["k_gram"] = kg;
  }
  njson sig = njson::object(), psd = njson::object();
  for (Ordering P : selected_orderings(A.F(), req.ordering)) {
    sig[pkey(P)] = trace_signature(t, P);
    psd[pkey(P)] = is_psd_at(t, P);
  }
  out["signature"] = sig;
  out["psd"] = psd;
  return out;
}

inline njson run_x_sigma(const njson& input, const Request&) {
  const Algebra A = algebra_of(input);
  const HarrisonSet h = x_sigma_harrison(A);
  njson gens = njson::array();
  for (const auto& g : h.generators) gens.push_back(fe_to_json(g));
  njson members = njson::array();
  for (Ordering P : h.members) members.push_back(P.index);
  return njson{{"x_sigma", members}, {"generators", gens}};
}

inline njson run_ps_check(const njson& input, const Request&) {
  const Algebra A = algebra_of(input);
  const PSVerdict v = ps_prime_check(A);
  njson xt = njson::array(), xs = njson::array();
  for (Ordering P : v.x_tilde) xt.push_back(P.index);
  for (Ordering P : v.x_sigma) xs.push_back(P.index);
  njson out{{"holds", v.holds}, {"x_tilde", xt}, {"x_sigma", xs}};
  if (!v.holds && v.witness_ordering) {
    out["witness"] = "1";
    out["ordering"] = v.witness_ordering->index;
  }
  return out;
}

inline njson run_certify(const njson& input, const Request& req) {
  // Split matrices get the exact constructive route; with an explicit algebra the
  // bounded search runs instead.
  if (input.is_array() || (input.is_object() && input.contains("matrix"))) {
    const Matrix<Rational> U = json_to_rational_matrix(input.is_array() ? input : input["matrix"]);
    const SOHSCertificate cert = split_psd_certificate(U);
    const Algebra A = split_transpose_algebra(U.rows());
    AElement u = a_zero(A);
    for (std::size_t i = 0; i < U.rows(); ++i)
      for (std::size_t j = 0; j < U.cols(); ++j)
        u(i, j) = d_from_field(A.D, fe(BaseField::Q(), U(i, j)));
    return njson{{"algebra", algebra_to_json(A)},
                 {"u", aelement_to_json(u)},
                 {"certificate", certificate_to_json(cert)}};
  }
  const Algebra A = algebra_of(input);
  const AElement u = json_to_aelement(input.at("u"), A);
  const AElement a = input.contains("a") ? json_to_aelement(input["a"], A) : a_one(A);
  std::vector<FieldElement> weights;
  if (input.contains("weights"))
    for (const auto& w : input["weights"]) weights.push_back(json_to_fe(w, A.F()));
  auto cert = bounded_search(A, u, a, weights, req.max_exponent, req.height_bound);
  if (!cert)
    return njson{{"found", false},
                 {"note", "bounded search exhausted; not a proof of non-representability"}};
  return njson{{"found", true},
               {"algebra", algebra_to_json(A)},
               {"u", aelement_to_json(u)},
               {"certificate", certificate_to_json(*cert)}};
}

inline njson run_verify(const njson& input, const Request&) {
  const Algebra A = algebra_of(input);
  const AElement u = json_to_aelement(input.at("u"), A);
  const SOHSCertificate cert = json_to_certificate(input.at("certificate"), A);
  return njson{{"valid", verify_sohs(A, u, cert)}};
}

inline njson run_audit(const njson& input, const Request&) {
  const Algebra A = algebra_of(input);
  const AElement u = (input.is_object() && input.contains("u"))
                         ? json_to_aelement(input["u"], A)
                         : a_one(A);
  const ReferenceTuple eta = reference_tuple(A);
  const AuditReport report = maximality_trace_audit(A, eta, u);
  njson rows = njson::array();
  for (const AuditRow& row : report.rows) {
    njson r{{"ordering", row.P.index},
            {"psd", row.psd},
            {"maximal", row.maximal},
            {"agree", row.agree}};
    if (row.definite) r["definite"] = *row.definite;
    if (row.pm_maximal) r["pm_maximal"] = *row.pm_maximal;
    if (row.eqvs2_agree) r["eqvs2_agree"] = *row.eqvs2_agree;
    if (row.refined_agree) r["refined_agree"] = *row.refined_agree;
    rows.push_back(r);
  }
  return njson{{"rows", rows}, {"all_agree", report.all_agree}};
}

inline std::string render_human(const njson& j) {
  std::string out;
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      out += key;
      out += ": ";
      out += value.dump();
      out += "\n";
    }
    return out;
  }
  return j.dump() + "\n";
}

}  // namespace cli_detail

inline RunResult run(const Request& req) {
  using namespace cli_detail;
  try {
    const njson input = load_input(req.input_path);
    njson out;
    if (req.subcommand == "classify")
      out = run_classify(input, req);
    else if (req.subcommand == "signature")
      out = run_signature(input, req);
    else if (req.subcommand == "maximal")
      out = run_maximal(input, req);
    else if (req.subcommand == "trace-form")
      out = run_trace_form(input, req);
    else if (req.subcommand == "x-sigma")
      out = run_x_sigma(input, req);
    else if (req.subcommand == "ps-check")
      out = run_ps_check(input, req);
    else if (req.subcommand == "certify")
      out = run_certify(input, req);
    else if (req.subcommand == "verify")
      out = run_verify(input, req);
    else if (req.subcommand == "audit")
      out = run_audit(input, req);
    else
      fail(errc::parse_error, "unknown subcommand '" + req.subcommand + "'");
    return RunResult{0, req.json_output ? out.dump(2) + "\n" : render_human(out)};
  } catch (const Error& e) {
    int code = 2;
    if (e.code() == errc::parse_error) code = 64;
    if (e.code() == errc::not_a_perfect_square) code = 70;
    njson err{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    return RunResult{code,
                     req.json_output ? err.dump(2) + "\n" : std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    njson err{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    return RunResult{70,
                     req.json_output ? err.dump(2) + "\n" : std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace hermsig
