// Error codes shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace hermsig {

enum class errc {
  parse_error,
  singular_phi,
  involution_axiom_violation,
  illegal_epsilon,
  dimension_mismatch,
  not_hermitian,
  zero_coefficient,
  algebra_mismatch,
  indivisible_dimension,
  not_invertible,
  not_symmetric,
  singular_form,
  search_exhausted,
  not_a_perfect_square,
  not_psd,
  malformed_certificate,
  empty_x_sigma,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::parse_error: return "ParseError";
    case errc::singular_phi: return "SingularPhi";
    case errc::involution_axiom_violation: return "InvolutionAxiomViolation";
    case errc::illegal_epsilon: return "IllegalEpsilon";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_hermitian: return "NotHermitian";
    case errc::zero_coefficient: return "ZeroCoefficient";
    case errc::algebra_mismatch: return "AlgebraMismatch";
    case errc::indivisible_dimension: return "IndivisibleDimension";
    case errc::not_invertible: return "NotInvertible";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::singular_form: return "SingularForm";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::not_a_perfect_square: return "NotAPerfectSquare";
    case errc::not_psd: return "NotPSD";
    case errc::malformed_certificate: return "MalformedCertificate";
    case errc::empty_x_sigma: return "EmptyXSigma";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw Error(code, message); }

}  // namespace hermsig
