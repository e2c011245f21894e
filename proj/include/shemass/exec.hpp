#pragma once

namespace shemass {

// Execution policy for the data-parallel loops (Monte Carlo paths,
// convolution quadrature).  Results are bit-identical under either policy:
// every work item is a pure function of its index and the reduction order
// is fixed.
enum class Exec { serial, openmp };

// Number of worker threads the openmp policy would use right now.
int exec_thread_count();

// Caps the openmp policy's thread count process-wide (0 = leave as is).
void set_exec_threads(int n);

}  // namespace shemass
