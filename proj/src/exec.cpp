#include "drg/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drg::exec {

namespace {

Mode g_mode =
#ifdef _OPENMP
    Mode::parallel;
#else
    Mode::serial;
#endif

} // namespace

Mode mode() { return g_mode; }

void set_mode(Mode m) {
#ifndef _OPENMP
    m = Mode::serial;
#endif
    g_mode = m;
}

int thread_count() {
#ifdef _OPENMP
    return g_mode == Mode::parallel ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

} // namespace drg::exec
