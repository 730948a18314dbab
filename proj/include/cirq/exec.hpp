#pragma once

#include <cstddef>

namespace cirq {

// Execution policy for the enumeration kernels. Serial is the reference
// implementation; Parallel fans the outer loop out with OpenMP; Auto picks
// Parallel once the loop is large enough to pay for itself. Both paths
// produce identical results.
enum class Exec { Serial, Parallel, Auto };

inline constexpr std::size_t kParallelThreshold = 4096;

bool openmp_enabled();
int worker_count();

inline bool use_parallel(Exec exec, std::size_t work) {
  if (!openmp_enabled()) return false;
  switch (exec) {
    case Exec::Serial: return false;
    case Exec::Parallel: return work > 1;
    case Exec::Auto: return work >= kParallelThreshold;
  }
  return false;
}

}  // namespace cirq
