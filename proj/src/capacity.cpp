#include "forge/capacity.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::uint64_t initial_capacity() {
    if (const char* env = std::getenv("FORGE_CAPACITY")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t{1} << 24;
}

std::atomic<std::uint64_t>& cap() {
    static std::atomic<std::uint64_t> c{initial_capacity()};
    return c;
}

}  // namespace

std::uint64_t capacity() { return cap().load(); }

void set_capacity(std::uint64_t amplitudes) { cap().store(amplitudes ? amplitudes : 1); }

void check_capacity(std::uint64_t amplitudes, const char* what) {
    const std::uint64_t limit = capacity();
    if (amplitudes > limit) {
        throw CapacityError(std::string(what) + ": " + std::to_string(amplitudes) +
                            " amplitudes exceed the dense capacity cap of " +
                            std::to_string(limit) +
                            " (set FORGE_CAPACITY to raise the limit)");
    }
}

}  // namespace forge
