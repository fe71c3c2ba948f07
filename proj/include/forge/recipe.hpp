#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "forge/errors.hpp"
#include "forge/registry.hpp"

namespace forge {

struct Diagnostic {
    std::string node;  // empty for document-level problems
    std::string message;
};

// Parse failure carrying every collected diagnostic.
struct RecipeParseError : Error {
    explicit RecipeParseError(std::vector<Diagnostic> diags);
    std::vector<Diagnostic> diagnostics;
};

struct RecipeNode {
    std::string id;
    std::string op;  // code | import | me_state | me_subspace | glue | eliminate |
                     // split | merge | combine | combine_eliminate | apply | permute | predict
    nlohmann::json params;
    std::vector<std::string> inputs;
};

struct VerifyRequest {
    std::string target;
    std::string check;  // uniformity | pure_code | qmds_projector | me_subspace
    int parameter = 0;  // r, d, or party
    int trials = 100;   // me_subspace only
    std::optional<double> tolerance;
};

struct RecipeGraph {
    std::uint64_t seed = 1;
    std::vector<RecipeNode> nodes;  // stored in a valid topological order
    std::vector<std::string> outputs;
    std::vector<VerifyRequest> verifications;
};

// Validates structure, op vocabulary, acyclicity, arities, and every
// dimension constraint that is statically derivable from registry
// parameters. Throws RecipeParseError with positioned diagnostics; never
// executes anything.
RecipeGraph parse_recipe(const nlohmann::json& doc, const Registry& registry);
RecipeGraph parse_recipe_file(const std::string& path, const Registry& registry);

struct Artifact {
    // predictions are carried as plain JSON
    std::variant<std::monostate, PureState, Subspace, nlohmann::json> value;
    std::optional<CodeParams> code_params;  // set for registry code nodes
    std::string content_key;                // content-addressed node key

    bool is_state() const { return std::holds_alternative<PureState>(value); }
    bool is_subspace() const { return std::holds_alternative<Subspace>(value); }
    bool is_prediction() const { return std::holds_alternative<nlohmann::json>(value); }
};

struct ExecOptions {
    std::string out_dir;    // when set, declared outputs are written here
    std::string cache_dir;  // when set, node outputs are cached on disk by content key
    double tolerance = 1e-9;
    int threads = 1;
    std::optional<std::uint64_t> seed_override;
    const Registry* registry = nullptr;  // defaults to Registry::builtin()
};

struct ExecutionResult {
    std::map<std::string, Artifact> artifacts;  // one per declared output
    std::vector<VerificationReport> reports;
    bool all_passed = true;
    nlohmann::json report_doc;
    std::vector<std::string> written_files;
};

// Topological execution with per-node content-addressed caching. All
// requested verifications run even after a failure; all_passed reflects
// their conjunction. Runtime errors carry the offending node id.
ExecutionResult execute(const RecipeGraph& graph, const ExecOptions& opts = {});

}  // namespace forge
