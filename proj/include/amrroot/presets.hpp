#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amrroot {

/// Benchmark objectives with their search bounds.
struct Preset {
  std::string name;
  std::string function_text;
  double a;
  double b;
  std::vector<double> known_roots;
  /// Exclusion radius for the two-phase strategy when the default factor
  /// rule is too tight for this function.
  std::optional<double> exclusion_radius;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace amrroot
