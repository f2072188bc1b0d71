// Error codes and the exception type shared by all fringe components.
#pragma once

#include <stdexcept>
#include <string>

namespace fringe {

enum class Errc {
  not_square,
  not_hermitian,
  not_psd,
  not_unitary,
  not_isometry,
  non_finite,
  dimension_mismatch,
  not_trace_preserving,
  not_trace_preserving_image,
  too_many_operators,
  bad_arity,
  bad_sample_count,
  too_few_samples,
  non_uniform_grid,
  parse_error,
  schema_error,
  validation_error,
  io_error,
  numeric_failure,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_square: return "not_square";
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::not_psd: return "not_psd";
    case Errc::not_unitary: return "not_unitary";
    case Errc::not_isometry: return "not_isometry";
    case Errc::non_finite: return "non_finite";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_trace_preserving: return "not_trace_preserving";
    case Errc::not_trace_preserving_image: return "not_trace_preserving_image";
    case Errc::too_many_operators: return "too_many_operators";
    case Errc::bad_arity: return "bad_arity";
    case Errc::bad_sample_count: return "bad_sample_count";
    case Errc::too_few_samples: return "too_few_samples";
    case Errc::non_uniform_grid: return "non_uniform_grid";
    case Errc::parse_error: return "parse_error";
    case Errc::schema_error: return "schema_error";
    case Errc::validation_error: return "validation_error";
    case Errc::io_error: return "io_error";
    case Errc::numeric_failure: return "numeric_failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fringe
