#include "cavity/threads.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace cavity {

int worker_count() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("CAVITY_ENTANGLER_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
        } catch (...) {
            // unparseable cap is ignored
        }
    }
    return n;
}

} // namespace cavity
