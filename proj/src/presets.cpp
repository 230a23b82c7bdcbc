#include "amrroot/presets.hpp"

namespace amrroot {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all{
      // Five simple roots, two of them 1e-5 apart.
      {"close-pair", "(x-0.5)*(x-0.50001)*(x-4)*(x-4.05)*(x-9.3)", 0.0, 10.0, {0.5, 0.50001, 4.0, 4.05, 9.3},
       std::nullopt},
      // Two double roots; the curve never crosses the axis.
      {"double-roots", "(x-3)^2*(x-4)^2", 0.0, 5.0, {3.0, 4.0}, std::nullopt},
      // A triple root next to a simple one.
      {"triple-root", "(x-0.5)^3*(x-0.50001)*(x-1)", 0.0, 1.5, {0.5, 0.50001, 1.0}, std::nullopt},
      // Two triple roots, two close simple roots and a double root. |p| stays
      // below 2.22e-16 within ~1e-3 of 0.5, so the phase-2 cut must be wide.
      {"mixed-multiplicity", "(x-0.5)^3*(x-0.50001)^3*(x-4.0)*(x-4.0001)*(x-4.2)^2", 0.0, 4.5,
       {0.5, 0.50001, 4.0, 4.0001, 4.2}, 0.0999},
  };
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace amrroot
