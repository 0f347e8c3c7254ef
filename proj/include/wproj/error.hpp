#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wproj {

/// Machine-readable failure categories. The string form (see `to_string`)
/// is part of the CLI and database report contract.
enum class errc {
  invalid_weights,
  invalid_tuple,
  invalid_scalar,
  non_rational_result,
  not_integral,
  undefined_valuation,
  weights_mismatch,
  unknown_preset,
  degenerate_moduli,
  arity,
  parse,
  derived_mismatch,
  io,
};

constexpr std::string_view to_string(errc e) noexcept {
  switch (e) {
    case errc::invalid_weights: return "invalid-weights";
    case errc::invalid_tuple: return "invalid-tuple";
    case errc::invalid_scalar: return "invalid-scalar";
    case errc::non_rational_result: return "non-rational-result";
    case errc::not_integral: return "not-integral";
    case errc::undefined_valuation: return "undefined-valuation";
    case errc::weights_mismatch: return "weights-mismatch";
    case errc::unknown_preset: return "unknown-preset";
    case errc::degenerate_moduli: return "degenerate-moduli";
    case errc::arity: return "arity";
    case errc::parse: return "parse";
    case errc::derived_mismatch: return "derived-mismatch";
    case errc::io: return "io";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }
  std::string_view reason() const noexcept { return to_string(code_); }

 private:
  errc code_;
};

}  // namespace wproj
