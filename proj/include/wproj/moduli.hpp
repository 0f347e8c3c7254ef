#pragma once

// Moduli-space presets for hyperelliptic curves: genus 2 via Igusa
// invariants (J2, J4, J6, J10) and genus 3 via octavic invariants.

#include <array>
#include <optional>
#include <string_view>

#include "wproj/wcore.hpp"

namespace wproj {

struct ModuliPreset {
  std::string name;
  Weights weights;
  // Coordinate that must be nonzero (discriminant-type condition).
  std::optional<std::size_t> nonvanishing_index;
};

inline constexpr std::array<std::string_view, 4> preset_names = {
    "genus2-igusa", "genus2-half", "genus3-octavic", "genus3-octavic-extended"};

inline ModuliPreset preset(std::string_view name) {
  if (name == "genus2-igusa") return {std::string(name), Weights({2, 4, 6, 10}), 3};
  if (name == "genus2-half") return {std::string(name), Weights({1, 2, 3, 5}), 3};
  // J14 is not one of the stored coordinates, so genus 3 has no check here.
  if (name == "genus3-octavic") return {std::string(name), Weights({2, 3, 4, 5, 6, 7}), std::nullopt};
  if (name == "genus3-octavic-extended") return {std::string(name), Weights({2, 3, 4, 5, 6, 7, 8}), std::nullopt};
  throw error(errc::unknown_preset, "unknown preset '" + std::string(name) + "'");
}

inline WeightedTuple moduli_point(const ModuliPreset& p, std::vector<Integer> coords) {
  if (coords.size() != p.weights.size()) {
    throw error(errc::arity, p.name + " expects " + std::to_string(p.weights.size()) + " coordinates, got " +
                                 std::to_string(coords.size()));
  }
  if (p.nonvanishing_index && coords[*p.nonvanishing_index] == 0) {
    throw error(errc::degenerate_moduli,
                p.name + ": coordinate " + std::to_string(*p.nonvanishing_index) + " must be nonzero");
  }
  return WeightedTuple(p.weights, std::move(coords));
}

/// Same coordinates over (1,2,3,5) instead of (2,4,6,10).
inline WeightedTuple reinterpret_half(const WeightedTuple& t) {
  static const Weights igusa({2, 4, 6, 10});
  static const Weights half({1, 2, 3, 5});
  if (!(t.weights() == igusa)) {
    throw error(errc::weights_mismatch, "reinterpret_half needs weights 2,4,6,10, got " + t.weights().str());
  }
  return WeightedTuple(half, std::vector<Integer>(t.coords().begin(), t.coords().end()));
}

}  // namespace wproj
