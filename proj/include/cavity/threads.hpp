#pragma once

namespace cavity {

/// Worker count for parallel kernels: OpenMP's default, capped by the
/// CAVITY_ENTANGLER_THREADS environment variable when set.
int worker_count();

} // namespace cavity
