#include "forge/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include "forge/errors.hpp"
#include "forge/sha256.hpp"

namespace forge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kB64Alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

void write_file_bytes(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw FormatError("short write to '" + path + "'");
}

json parse_json_file(const std::string& path) {
    const std::string text = read_file_bytes(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("'" + path + "': " + e.what(), static_cast<long long>(e.byte));
    }
}

// writes amplitudes either inline (base64) or to a sidecar next to `path`
json encode_amplitudes(const std::string& path, std::span<const cplx> amps) {
    const std::vector<unsigned char> bytes = amplitudes_to_bytes(amps);
    json out;
    out["count"] = amps.size();
    if (amps.size() <= kInlineAmplitudeLimit) {
        out["encoding"] = "base64";
        out["data"] = base64_encode(bytes);
    } else {
        const fs::path p(path);
        fs::path sidecar = p;
        sidecar.replace_extension(".amps");
        const std::string payload(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        write_file_bytes(sidecar.string(), payload);
        out["encoding"] = "binary";
        out["file"] = sidecar.filename().string();
        out["sha256"] = sha256_hex(payload);
    }
    return out;
}

std::vector<cplx> decode_amplitudes(const std::string& path, const json& doc,
                                    std::uint64_t expected_count) {
    if (!doc.is_object() || !doc.contains("encoding") || !doc.contains("count"))
        throw FormatError("'" + path + "': malformed amplitudes block");
    const std::uint64_t count = doc.at("count").get<std::uint64_t>();
    if (count != expected_count)
        throw FormatError("'" + path + "': amplitude count " + std::to_string(count) +
                          " does not match dims (expected " + std::to_string(expected_count) +
                          ")");
    const std::string encoding = doc.at("encoding").get<std::string>();
    std::vector<unsigned char> bytes;
    if (encoding == "base64") {
        bytes = base64_decode(doc.at("data").get<std::string>());
    } else if (encoding == "binary") {
        const fs::path sidecar = fs::path(path).parent_path() / doc.at("file").get<std::string>();
        const std::string payload = read_file_bytes(sidecar.string());
        if (doc.contains("sha256") && sha256_hex(payload) != doc.at("sha256").get<std::string>())
            throw FormatError("'" + sidecar.string() + "': content hash mismatch");
        bytes.assign(payload.begin(), payload.end());
    } else {
        throw FormatError("'" + path + "': unknown amplitude encoding '" + encoding + "'");
    }
    if (bytes.size() != count * 16)
        throw FormatError("'" + path + "': amplitude payload has " +
                          std::to_string(bytes.size()) + " bytes, expected " +
                          std::to_string(count * 16),
                          static_cast<long long>(std::min(bytes.size(), count * 16)));
    return amplitudes_from_bytes(bytes);
}

void check_header(const std::string& path, const json& doc, const char* kind) {
    if (!doc.is_object()) throw FormatError("'" + path + "': not a JSON object");
    if (!doc.contains("format_version") || doc.at("format_version").get<int>() != kFormatVersion)
        throw FormatError("'" + path + "': missing or unsupported format_version");
    if (!doc.contains("kind") || doc.at("kind").get<std::string>() != kind)
        throw FormatError("'" + path + "': expected kind '" + kind + "'");
}

}  // namespace

std::string base64_encode(std::span<const unsigned char> data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back(kB64Alphabet[v & 63]);
    }
    const std::size_t rem = data.size() - i;
    if (rem == 1) {
        const std::uint32_t v = data[i] << 16;
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back('=');
        out.push_back('=');
    } else if (rem == 2) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
    std::array<int, 256> lut;
    lut.fill(-1);
    for (int i = 0; i < 64; ++i) lut[static_cast<unsigned char>(kB64Alphabet[i])] = i;
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t acc = 0;
    int bits = 0;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '=' || c == '\n' || c == '\r') continue;
        const int v = lut[static_cast<unsigned char>(c)];
        if (v < 0)
            throw FormatError("base64: invalid character", static_cast<long long>(pos));
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<unsigned char>((acc >> bits) & 0xff));
        }
    }
    return out;
}

std::vector<unsigned char> amplitudes_to_bytes(std::span<const cplx> amps) {
    std::vector<unsigned char> out;
    out.reserve(amps.size() * 16);
    auto push_double = [&out](double x) {
        const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
    };
    for (const cplx& a : amps) {
        push_double(a.real());
        push_double(a.imag());
    }
    return out;
}

std::vector<cplx> amplitudes_from_bytes(std::span<const unsigned char> bytes) {
    if (bytes.size() % 16 != 0)
        throw FormatError("amplitude payload length is not a multiple of 16",
                          static_cast<long long>(bytes.size()));
    auto pull_double = [&bytes](std::size_t at) {
        std::uint64_t bits = 0;
        for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[at + i];
        return std::bit_cast<double>(bits);
    };
    std::vector<cplx> out(bytes.size() / 16);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = cplx(pull_double(16 * i), pull_double(16 * i + 8));
    return out;
}

void write_state(const std::string& path, const PureState& s) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "state";
    doc["dims"] = s.shape().dims();
    doc["amplitudes"] = encode_amplitudes(path, s.amplitudes());
    write_file_bytes(path, doc.dump(2) + "\n");
}

PureState read_state(const std::string& path) {
    const json doc = parse_json_file(path);
    check_header(path, doc, "state");
    try {
        Shape shape(doc.at("dims").get<std::vector<int>>());
        std::vector<cplx> amps = decode_amplitudes(path, doc.at("amplitudes"), shape.total_dim());
        return PureState(std::move(shape), std::move(amps));
    } catch (const json::exception& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

void write_subspace(const std::string& path, const Subspace& w) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "subspace";
    doc["dims"] = w.shape().dims();
    doc["k"] = w.dimension();
    if (w.claimed_uniformity())
        doc["claimed_uniformity"] = *w.claimed_uniformity();
    else
        doc["claimed_uniformity"] = nullptr;
    std::vector<cplx> all;
    all.reserve(static_cast<std::size_t>(w.dimension()) * w.shape().total_dim());
    for (int j = 0; j < w.dimension(); ++j)
        all.insert(all.end(), w.basis(j).amplitudes().begin(), w.basis(j).amplitudes().end());
    doc["amplitudes"] = encode_amplitudes(path, all);
    write_file_bytes(path, doc.dump(2) + "\n");
}

Subspace read_subspace(const std::string& path) {
    const json doc = parse_json_file(path);
    check_header(path, doc, "subspace");
    try {
    Shape shape(doc.at("dims").get<std::vector<int>>());
    const int k = doc.at("k").get<int>();
    if (k < 1) throw FormatError("'" + path + "': k must be positive");
    std::vector<cplx> all =
        decode_amplitudes(path, doc.at("amplitudes"), shape.total_dim() * k);
    std::vector<PureState> basis;
    basis.reserve(k);
    const std::uint64_t dim = shape.total_dim();
    for (int j = 0; j < k; ++j) {
        std::vector<cplx> amps(all.begin() + static_cast<std::ptrdiff_t>(j * dim),
                               all.begin() + static_cast<std::ptrdiff_t>((j + 1) * dim));
        basis.emplace_back(shape, std::move(amps));
    }
    std::optional<int> claim;
    if (doc.contains("claimed_uniformity") && !doc.at("claimed_uniformity").is_null())
        claim = doc.at("claimed_uniformity").get<int>();
    return Subspace(std::move(shape), std::move(basis), claim);
    } catch (const json::exception& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

Subspace read_subspace_or_state(const std::string& path) {
    const json doc = parse_json_file(path);
    if (doc.is_object() && doc.contains("kind") && doc.at("kind") == "state")
        return Subspace::from_state(read_state(path));
    return read_subspace(path);
}

nlohmann::json report_to_json(const VerificationReport& rep) {
    json j;
    j["target"] = rep.target;
    j["check"] = rep.kind;
    j["parameter"] = rep.parameter;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    j["worst_deviation"] = rep.worst_deviation;
    j["worst_subset"] = rep.worst_subset;
    j["subsets_checked"] = rep.subsets_checked;
    j["pairs_checked"] = rep.pairs_checked;
    j["operators_checked"] = rep.operators_checked;
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    json devs = json::array();
    for (const auto& d : rep.subset_deviations)
        devs.push_back(json{{"parties", d.parties}, {"deviation", d.deviation}});
    j["subset_deviations"] = devs;
    return j;
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reps) {
    json doc;
    doc["format_version"] = kFormatVersion;
    bool all = true;
    json checks = json::array();
    for (const auto& r : reps) {
        all = all && r.pass;
        checks.push_back(report_to_json(r));
    }
    doc["pass"] = all;
    doc["checks"] = checks;
    return doc;
}

void write_report(const std::string& path, const std::vector<VerificationReport>& reps) {
    write_file_bytes(path, reports_to_json(reps).dump(2) + "\n");
}

}  // namespace forge
