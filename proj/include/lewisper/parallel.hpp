#pragma once

#include <cstdlib>
#include <functional>

#ifdef LEWISPER_HAVE_OPENMP
#include <omp.h>
#endif

namespace lewisper {

// Thread count used by parallel_for: explicit setting > LEWISPER_THREADS > OpenMP default.
inline int& thread_count_ref() {
    static int count = 0;  // 0 = not yet resolved
    return count;
}

inline int thread_count() {
    int& c = thread_count_ref();
    if (c > 0) return c;
    if (const char* env = std::getenv("LEWISPER_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return c = n;
    }
#ifdef LEWISPER_HAVE_OPENMP
    return c = omp_get_max_threads();
#else
    return c = 1;
#endif
}

inline void set_thread_count(int n) { thread_count_ref() = n > 0 ? n : 0; }

// Static-schedule parallel loop. Each index must write only its own slot so
// results are bitwise independent of the thread count.
template <class F>
void parallel_for(long n, F&& body) {
#ifdef LEWISPER_HAVE_OPENMP
    const int nt = thread_count();
    if (nt > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (long i = 0; i < n; ++i) body(i);
}

// Serial reference loop, kept for determinism and benchmark comparisons.
template <class F>
void serial_for(long n, F&& body) {
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace lewisper
