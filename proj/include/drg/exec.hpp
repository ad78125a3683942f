#pragma once

namespace drg::exec {

enum class Mode { serial, parallel };

// Process-wide switch for the kernels that have both code paths.
// Defaults to parallel when compiled with OpenMP, serial otherwise.
Mode mode();
void set_mode(Mode m);
int thread_count();

} // namespace drg::exec
