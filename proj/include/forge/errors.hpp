#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent arguments (bad permutation, shape mismatch, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// An index component is out of range.
struct IndexError : Error {
    explicit IndexError(const std::string& msg) : Error(msg) {}
};

// A dense object would exceed the configured amplitude budget or a fixed
// test-scale guard.
struct CapacityError : Error {
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// Isometry input too small for the merged target index and similar size
// incompatibilities.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// A stated precondition does not hold (non-QMDS input, r < 1, ...).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Stabilizer group construction failed (non-commuting generators, wrong rank).
struct ConstructionError : Error {
    explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

// Unknown registry entry or an entry that failed self-verification.
struct RegistryError : Error {
    explicit RegistryError(const std::string& msg) : Error(msg) {}
};

// Unreadable or malformed file; carries a byte offset when known.
struct FormatError : Error {
    explicit FormatError(const std::string& msg, long long byte_offset = -1)
        : Error(byte_offset >= 0 ? msg + " (byte offset " + std::to_string(byte_offset) + ")"
                                 : msg),
          offset(byte_offset) {}
    long long offset;
};

}  // namespace forge
