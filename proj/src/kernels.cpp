#include "amrroot/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef AMRROOT_HAVE_OPENMP
#include <omp.h>
#endif

namespace amrroot::kernels {

namespace {

double safe_call(const Function& f, double x) noexcept {
  try {
    double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<double> uniform_nodes(double a, double b, double spacing) {
  if (!(a < b)) throw InvalidArgument("uniform_nodes: need a < b");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw InvalidArgument("uniform_nodes: spacing must be positive");
  const double ratio = (b - a) / spacing;
  auto cells = static_cast<std::size_t>(std::ceil(ratio));
  // Absorb rounding noise like 10 / 1e-5 = 1000000.0000000001.
  if (cells > 1 && static_cast<double>(cells - 1) >= ratio * (1.0 - 1e-12)) --cells;
  if (cells == 0) cells = 1;
  std::vector<double> nodes(cells + 1);
  for (std::size_t k = 0; k < cells; ++k) nodes[k] = a + static_cast<double>(k) * spacing;
  nodes[cells] = b;
  return nodes;
}

void evaluate_serial(const Function& f, std::span<const double> xs, std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = safe_call(f, xs[i]);
}

void evaluate_parallel(const Function& f, std::span<const double> xs, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = safe_call(f, xs[i]);
}

SignScan scan_signs_serial(std::span<const double> values) {
  SignScan scan;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) scan.exact_zeros.push_back(i);
    if (i + 1 < values.size() && opposite_signs(values[i], values[i + 1]))
      scan.bracketing_cells.push_back(i);
  }
  return scan;
}

SignScan scan_signs_parallel(std::span<const double> values) {
#ifndef AMRROOT_HAVE_OPENMP
  return scan_signs_serial(values);
#else
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const int threads = omp_get_max_threads();
  std::vector<SignScan> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
    // Static schedule gives each thread one contiguous, ordered block.
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (values[u] == 0.0) mine.exact_zeros.push_back(u);
      if (i + 1 < n && opposite_signs(values[u], values[u + 1])) mine.bracketing_cells.push_back(u);
    }
  }
  SignScan scan;
  for (auto& p : partial) {
    scan.exact_zeros.insert(scan.exact_zeros.end(), p.exact_zeros.begin(), p.exact_zeros.end());
    scan.bracketing_cells.insert(scan.bracketing_cells.end(), p.bracketing_cells.begin(),
                                 p.bracketing_cells.end());
  }
  return scan;
#endif
}

int max_threads() noexcept {
#ifdef AMRROOT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace amrroot::kernels
