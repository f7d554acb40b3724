#pragma once

namespace mpomdp {

// Selects between the serial reference implementation and the OpenMP kernel
// for the operations that process independent work items (frontier sweeps,
// oracle policy evaluation). Both paths produce identical results; the serial
// one is kept as the comparison baseline for tests and benchmarks.
enum class Execution { serial, parallel };

}  // namespace mpomdp
