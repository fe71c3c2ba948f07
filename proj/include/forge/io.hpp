#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "forge/errors.hpp"
#include "forge/state.hpp"
#include "forge/subspace.hpp"
#include "forge/verifier.hpp"

namespace forge {

inline constexpr int kFormatVersion = 1;

// Amplitudes above this count go to a binary sidecar file (<stem>.amps,
// little-endian float64 re/im pairs in index order) referenced by relative
// path plus content hash; smaller payloads are base64-embedded.
inline constexpr std::size_t kInlineAmplitudeLimit = 4096;

std::string base64_encode(std::span<const unsigned char> data);
std::vector<unsigned char> base64_decode(const std::string& text);

// Bit-exact little-endian serialization of interleaved (re, im) doubles.
std::vector<unsigned char> amplitudes_to_bytes(std::span<const cplx> amps);
std::vector<cplx> amplitudes_from_bytes(std::span<const unsigned char> bytes);

void write_state(const std::string& path, const PureState& s);
PureState read_state(const std::string& path);

void write_subspace(const std::string& path, const Subspace& w);
Subspace read_subspace(const std::string& path);

// Either kind; returns a 1-dim subspace for state files.
Subspace read_subspace_or_state(const std::string& path);

// Reports serialize without wall-clock fields so reruns are byte-identical.
nlohmann::json report_to_json(const VerificationReport& rep);
nlohmann::json reports_to_json(const std::vector<VerificationReport>& reps);
void write_report(const std::string& path, const std::vector<VerificationReport>& reps);

}  // namespace forge
