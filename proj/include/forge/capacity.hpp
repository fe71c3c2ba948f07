#pragma once

#include <cstdint>

namespace forge {

// Dense amplitude budget. Default is 2^24 amplitudes; the FORGE_CAPACITY
// environment variable overrides it at process start, and set_capacity()
// overrides it programmatically (tests, embedders).
std::uint64_t capacity();
void set_capacity(std::uint64_t amplitudes);

// Throws CapacityError when `amplitudes` exceeds the current budget.
void check_capacity(std::uint64_t amplitudes, const char* what);

}  // namespace forge
