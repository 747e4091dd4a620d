#pragma once

namespace nsas {

/// Applies the NSAS_THREADS cap (when set to a positive integer) and returns
/// the number of threads parallel regions will use.
int configure_threads();

/// Current thread budget.
int thread_count();

}  // namespace nsas
