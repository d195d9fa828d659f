#pragma once

#include <cstddef>
#include <functional>

namespace imexstab {

/// Worker cap for internal data-parallel sections: the IMEXSTAB_THREADS
/// environment variable when set (minimum 1), otherwise the hardware
/// concurrency.
int thread_cap();

/// Runs body(i) for i in [0, n) on up to thread_cap() threads. Bodies must
/// not share mutable state except through their own output slots; results
/// are index-addressed, so the output is identical to the serial loop.
void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& body);

}  // namespace imexstab
