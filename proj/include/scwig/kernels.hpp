#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace scwig {

/// Execution policy for the heavy sweeps. The serial path is the reference;
/// the parallel path distributes independent indices with OpenMP and then
/// reduces in index order, so both produce bit-identical results.
enum class Exec { serial, parallel };

/// Exceptions thrown by f inside the parallel region are captured and the
/// first one is rethrown on the calling thread.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::parallel) {
    const long long m = static_cast<long long>(n);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < m; ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(scwig_kernel_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (std::size_t i = 0; i < n; ++i) f(i);
  }
}

/// Sum of f(i) over [0, n) in fixed index order.
template <class F>
double ordered_sum(std::size_t n, Exec exec, F&& f) {
  std::vector<double> parts(n);
  for_each_index(n, exec, [&](std::size_t i) { parts[i] = f(i); });
  double s = 0.0;
  for (double v : parts) s += v;
  return s;
}

}  // namespace scwig
