#pragma once

#include <string_view>
#include <vector>

#include "kvis/decomposition.hpp"

namespace kvis {

enum class GuardRole { kBase, kHoleEdge, kRelocated };

std::string_view to_string(GuardRole role);
std::optional<GuardRole> parse_guard_role(std::string_view name);

/// Where a guard sits: parameter t along a source edge (flat edge id) or a
/// diagonal (diagonal id), measured from the segment's first point.
struct GuardHost {
  EdgeKind kind = EdgeKind::kReal;
  int index = -1;
  Rational t;

  friend bool operator==(const GuardHost&, const GuardHost&) = default;
};

struct Guard {
  Point position;
  GuardHost host;
  int k = 2;
  GuardRole role = GuardRole::kBase;

  friend bool operator==(const Guard&, const Guard&) = default;
};

struct GuardSet {
  std::vector<Guard> guards;
  int k = 2;
  int target_m = 4;

  friend bool operator==(const GuardSet&, const GuardSet&) = default;
};

}  // namespace kvis
