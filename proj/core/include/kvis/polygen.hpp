#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "kvis/geometry.hpp"

namespace kvis {

enum class Family { kRandomSimple, kMonotone, kComb, kSpiral, kStaircase, kDart, kWithHoles };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

struct GenSpec {
  Family family = Family::kRandomSimple;
  /// Vertex budget. For the structured families it also fixes the shape
  /// parameter when `parameter` is 0: comb teeth = n / 4, spiral turns =
  /// (n / 2 - 1) / 4, staircase steps = (n - 2) / 2, holes = n / 8.
  int n = 8;
  std::uint64_t seed = 1;
  int parameter = 0;
};

/// Deterministic polygon for a GenSpec. Throws kInvalidArgument when n is too
/// small for the family and kGenFailed when no valid polygon was found after
/// bounded reseeding.
PolygonWithHoles generate(const GenSpec& spec);

/// Strictly x-monotone boundary: exactly one local x-minimum and maximum.
bool is_x_monotone(const Ring& ring);

}  // namespace kvis
