#pragma once

// Data-parallel kernels behind the uniform-mesh baseline and the dense-grid
// oracles. Each kernel has a serial reference version; the OpenMP versions
// must produce identical output.

#include <cstddef>
#include <span>
#include <vector>

#include "amrroot/core.hpp"

namespace amrroot::kernels {

/// Nodes a, a + h, a + 2h, ..., b: ceil((b - a) / h) + 1 points, the last
/// cell possibly shorter than h.
std::vector<double> uniform_nodes(double a, double b, double spacing);

/// out[i] = f(xs[i]). A throwing or non-finite call stores NaN.
void evaluate_serial(const Function& f, std::span<const double> xs, std::span<double> out);
void evaluate_parallel(const Function& f, std::span<const double> xs, std::span<double> out);

struct SignScan {
  std::vector<std::size_t> bracketing_cells;  // i with values[i], values[i+1] of strictly opposite sign
  std::vector<std::size_t> exact_zeros;       // i with values[i] == 0
  bool operator==(const SignScan&) const = default;
};

SignScan scan_signs_serial(std::span<const double> values);
SignScan scan_signs_parallel(std::span<const double> values);

inline bool opposite_signs(double a, double b) noexcept {
  return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads() noexcept;

}  // namespace amrroot::kernels
