#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace forge {

// SHA-256 of a byte span, hex-encoded.
std::string sha256_hex(std::span<const unsigned char> data);
std::string sha256_hex(const std::string& data);

}  // namespace forge
