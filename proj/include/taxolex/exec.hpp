#pragma once

namespace taxolex {

// Dataset-level kernels (batch transforms, matching, mining support counts)
// come in two interchangeable implementations: a plain serial loop kept as
// the reference, and an OpenMP loop over sessions/candidates. Results are
// identical; tests assert it and the bench target compares throughput.
enum class Exec { Serial, Parallel };

}  // namespace taxolex
