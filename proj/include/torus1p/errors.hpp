#pragma once

#include <stdexcept>
#include <string>

namespace torus1p {

/// Error conditions raised by the library. Codes are stable strings so the
/// CLI can emit machine-readable error objects.
enum class errc {
  non_square,
  dimension_mismatch,
  zero_vector,
  non_primitive_vector,
  classical_nonzero,
  not_reduced_basis,
  not_a_cycle,
  rank_precondition,
  resolution_too_coarse,
  unsupported_dimension,
  malformed_input,
  internal,
};

constexpr const char* errc_name(errc c) {
  switch (c) {
  case errc::non_square: return "NonSquare";
  case errc::dimension_mismatch: return "DimensionMismatch";
  case errc::zero_vector: return "ZeroVector";
  case errc::non_primitive_vector: return "NonPrimitiveVector";
  case errc::classical_nonzero: return "ClassicalNonzero";
  case errc::not_reduced_basis: return "NotReducedBasis";
  case errc::not_a_cycle: return "NotACycle";
  case errc::rank_precondition: return "RankPrecondition";
  case errc::resolution_too_coarse: return "ResolutionTooCoarse";
  case errc::unsupported_dimension: return "UnsupportedDimension";
  case errc::malformed_input: return "MalformedInput";
  case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code), message_(message) {}

  errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }
  const std::string& message() const { return message_; }

private:
  errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

} // namespace torus1p
