#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/errors.hpp"
#include "forge/constructors.hpp"
#include "forge/stabilizer.hpp"
#include "forge/verifier.hpp"

namespace forge {

// Realization payloads. Entries are trusted only after self-verification;
// the registry only guarantees structural integrity (rank, orthonormality,
// stabilizer certificates) at materialization time.
struct StabilizerData {
    StabilizerSpec spec;
};

struct GfqData {
    GfqStabilizerSpec spec;
};

// CSS code built from one self-orthogonal GRS code (hx = hz = G).
struct CssGrsData {
    int p = 0;
    int n = 0;
    int kappa = 0;
    std::vector<int> points;
    std::vector<int> multipliers;
};

// Small fixed vocabulary of derivations from other entries.
struct DerivedData {
    std::string op;  // "eliminate" | "tensor_merge" | "split_all" | "combine_eliminate"
    std::string of;
    std::string with;  // combine_eliminate only
    int party = -1;    // eliminate
    int alpha = 0, beta = 0;
    std::vector<int> split_factors;  // split_all: {d1, d2} applied to every party
};

struct ImportData {
    std::string file;  // amplitude file path, resolved against the registry base dir
};

struct UnavailableData {
    std::string reason;
};

using Realization =
    std::variant<StabilizerData, GfqData, CssGrsData, DerivedData, ImportData, UnavailableData>;

struct CodeEntry {
    std::string name;
    std::vector<std::string> aliases;
    CodeParams params;
    bool optional = false;
    std::string note;
    Realization realization;

    bool is_qmds() const { return params.is_qmds(); }
};

// Read-only after load; materialization results are cached per entry and
// safe for concurrent readers.
class Registry {
public:
    static const Registry& builtin();
    // Independent instance of the built-in data with an empty materialization
    // cache (cold-start timing, isolation in tests).
    static Registry fresh_builtin();
    static Registry from_json_text(const std::string& text, const std::string& base_dir = ".");
    static Registry load_file(const std::string& path);

    std::vector<std::string> names() const;  // canonical names in file order
    bool has(const std::string& name) const;
    const CodeEntry& get(const std::string& name) const;

    // Materializes the entry's subspace (claimed uniformity d-1). Checks
    // the dense capacity cap before touching realization data, so
    // out-of-scale entries fail with a capacity error even when their data
    // is absent.
    Subspace materialize(const std::string& name) const;
    MaterializedCode materialize_code(const std::string& name) const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::string, Subspace> spaces;
    };

    std::vector<CodeEntry> entries_;
    std::map<std::string, std::size_t> index_;  // name and aliases
    std::string base_dir_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    const CodeEntry& resolve(const std::string& name) const;
    Subspace build(const CodeEntry& entry) const;
};

// Full self-verification of one entry: pure-code check at the declared
// distance, the cross-oracle uniformity check at d-1 (when d >= 2), and the
// QMDS projector reduction check when the parameters saturate the
// Singleton bound.
std::vector<VerificationReport> selfcheck_entry(const Registry& reg, const std::string& name,
                                                const VerifyOptions& opts);

}  // namespace forge
