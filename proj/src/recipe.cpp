#include "forge/recipe.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "forge/capacity.hpp"
#include "forge/io.hpp"
#include "forge/sha256.hpp"

namespace forge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kOps = {"code",  "import", "me_state", "me_subspace",
                                    "glue",  "eliminate", "split", "merge",
                                    "combine", "combine_eliminate", "apply",
                                    "permute", "predict"};

const std::set<std::string> kChecks = {"uniformity", "pure_code", "qmds_projector",
                                       "me_subspace"};

std::string diag_text(const std::vector<Diagnostic>& diags) {
    std::string out = "recipe has " + std::to_string(diags.size()) + " problem(s):";
    for (const Diagnostic& d : diags) {
        out += "\n  ";
        if (!d.node.empty()) out += "node '" + d.node + "': ";
        out += d.message;
    }
    return out;
}

// statically derived node facts; absent fields mean "unknown here"
struct StaticInfo {
    std::optional<std::vector<int>> dims;
    std::optional<long long> k;
    bool is_state = false;
    std::optional<CodeParams> code;
};

bool get_int(const json& params, const char* key, long long& out) {
    if (!params.contains(key) || !params.at(key).is_number_integer()) return false;
    out = params.at(key).get<long long>();
    return true;
}

}  // namespace

RecipeParseError::RecipeParseError(std::vector<Diagnostic> diags)
    : Error(diag_text(diags)), diagnostics(std::move(diags)) {}

RecipeGraph parse_recipe_file(const std::string& path, const Registry& registry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("recipe: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("'" + path + "': " + e.what(), static_cast<long long>(e.byte));
    }
    return parse_recipe(doc, registry);
}

RecipeGraph parse_recipe(const json& doc, const Registry& registry) {
    std::vector<Diagnostic> diags;
    auto bad = [&diags](const std::string& node, const std::string& msg) {
        diags.push_back({node, msg});
    };

    RecipeGraph graph;
    if (!doc.is_object()) {
        bad("", "recipe document must be a JSON object");
        throw RecipeParseError(std::move(diags));
    }
    if (doc.value("format_version", 0) != kFormatVersion)
        bad("", "missing or unsupported format_version (expected " +
                    std::to_string(kFormatVersion) + ")");
    graph.seed = doc.value("seed", std::uint64_t{1});

    if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
        bad("", "missing 'nodes' array");
        throw RecipeParseError(std::move(diags));
    }

    std::vector<RecipeNode> nodes;
    std::map<std::string, std::size_t> by_id;
    for (const json& nj : doc.at("nodes")) {
        RecipeNode node;
        if (!nj.is_object() || !nj.contains("id") || !nj.at("id").is_string() ||
            nj.at("id").get<std::string>().empty()) {
            bad("", "every node needs a non-empty string id");
            continue;
        }
        node.id = nj.at("id").get<std::string>();
        if (by_id.count(node.id)) {
            bad(node.id, "duplicate node id");
            continue;
        }
        node.op = nj.value("op", std::string{});
        if (!kOps.count(node.op)) bad(node.id, "unknown op '" + node.op + "'");
        node.params = nj.value("params", json::object());
        if (!node.params.is_object()) bad(node.id, "'params' must be an object");
        if (nj.contains("inputs")) {
            if (!nj.at("inputs").is_array()) {
                bad(node.id, "'inputs' must be an array of node ids");
            } else {
                for (const json& ij : nj.at("inputs")) {
                    if (!ij.is_string()) {
                        bad(node.id, "input references must be strings");
                        continue;
                    }
                    node.inputs.push_back(ij.get<std::string>());
                }
            }
        }
        by_id[node.id] = nodes.size();
        nodes.push_back(std::move(node));
    }

    // undefined inputs
    for (const RecipeNode& node : nodes)
        for (const std::string& in : node.inputs)
            if (!by_id.count(in)) bad(node.id, "references undefined node '" + in + "'");
    if (!diags.empty()) throw RecipeParseError(std::move(diags));

    // Kahn topological sort; leftover nodes form a cycle
    std::vector<int> indegree(nodes.size(), 0);
    std::vector<std::vector<std::size_t>> dependents(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (const std::string& in : nodes[i].inputs) {
            indegree[i] += 1;
            dependents[by_id[in]].push_back(i);
        }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (indegree[i] == 0) order.push_back(i);
    for (std::size_t head = 0; head < order.size(); ++head)
        for (std::size_t dep : dependents[order[head]])
            if (--indegree[dep] == 0) order.push_back(dep);
    if (order.size() != nodes.size()) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (indegree[i] > 0) bad(nodes[i].id, "node participates in a cycle");
        throw RecipeParseError(std::move(diags));
    }

    // static validation in topological order
    std::map<std::string, StaticInfo> info;
    for (std::size_t pos : order) {
        const RecipeNode& node = nodes[pos];
        StaticInfo si;
        try {
        auto arity = [&](std::size_t want) {
            if (node.inputs.size() != want) {
                bad(node.id, "op '" + node.op + "' expects " + std::to_string(want) +
                                 " input(s), got " + std::to_string(node.inputs.size()));
                return false;
            }
            return true;
        };
        auto input_info = [&](std::size_t idx) -> StaticInfo& { return info[node.inputs[idx]]; };

        if (node.op == "code") {
            arity(0);
            const std::string name = node.params.value("name", std::string{});
            if (name.empty() || !registry.has(name)) {
                bad(node.id, "unknown registry code '" + name + "'");
            } else {
                const CodeEntry& entry = registry.get(name);
                si.code = entry.params;
                si.k = entry.params.K;
                si.dims = std::vector<int>(entry.params.n, entry.params.D);
            }
        } else if (node.op == "import") {
            arity(0);
            if (node.params.value("file", std::string{}).empty())
                bad(node.id, "import needs a 'file' parameter");
        } else if (node.op == "me_state") {
            arity(0);
            long long k = 0;
            if (!get_int(node.params, "k", k) || k < 2)
                bad(node.id, "me_state needs integer k >= 2");
            else {
                si.dims = std::vector<int>{static_cast<int>(k), static_cast<int>(k)};
                si.k = 1;
                si.is_state = true;
            }
        } else if (node.op == "me_subspace") {
            arity(0);
            long long p = 0;
            if (!get_int(node.params, "p", p) || p < 2)
                bad(node.id, "me_subspace needs integer p >= 2");
            else {
                si.dims = std::vector<int>{2, static_cast<int>(p)};
                si.k = p / 2;
            }
        } else if (node.op == "glue") {
            if (arity(2)) {
                const StaticInfo& a = input_info(0);
                const StaticInfo& b = input_info(1);
                if (a.dims && b.dims) {
                    si.dims = *a.dims;
                    si.dims->insert(si.dims->end(), b.dims->begin(), b.dims->end());
                }
                if (a.k && b.k) si.k = *a.k * *b.k;
                si.is_state = a.is_state && b.is_state;
            }
        } else if (node.op == "eliminate") {
            if (arity(1)) {
                long long party = -1;
                if (!get_int(node.params, "party", party))
                    bad(node.id, "eliminate needs an integer 'party'");
                long long r = 0;
                if (node.params.contains("r") && (!get_int(node.params, "r", r) || r < 1))
                    bad(node.id, "optional 'r' must be an integer >= 1");
                const StaticInfo& a = input_info(0);
                if (a.dims && party >= 0) {
                    if (party >= static_cast<long long>(a.dims->size())) {
                        bad(node.id, "party " + std::to_string(party) + " out of range for " +
                                         std::to_string(a.dims->size()) + " parties");
                    } else {
                        si.dims = *a.dims;
                        const int d = (*si.dims)[party];
                        si.dims->erase(si.dims->begin() + party);
                        if (a.k) si.k = *a.k * d;
                        if (si.dims->empty()) bad(node.id, "cannot eliminate the only party");
                    }
                }
            }
        } else if (node.op == "split") {
            if (arity(1)) {
                long long party = -1, d1 = 0, d2 = 0;
                if (!get_int(node.params, "party", party) || !get_int(node.params, "d1", d1) ||
                    !get_int(node.params, "d2", d2))
                    bad(node.id, "split needs integers 'party', 'd1', 'd2'");
                const StaticInfo& a = input_info(0);
                si.is_state = a.is_state;
                si.k = a.k;
                if (a.dims && party >= 0) {
                    if (party >= static_cast<long long>(a.dims->size()))
                        bad(node.id, "party out of range");
                    else if (d1 < 2 || d2 < 2 || d1 * d2 != (*a.dims)[party])
                        bad(node.id, "dimension " + std::to_string((*a.dims)[party]) +
                                         " does not factor as " + std::to_string(d1) + "*" +
                                         std::to_string(d2));
                    else {
                        si.dims = *a.dims;
                        (*si.dims)[party] = static_cast<int>(d1);
                        si.dims->insert(si.dims->begin() + party + 1, static_cast<int>(d2));
                    }
                }
            }
        } else if (node.op == "merge") {
            if (arity(1)) {
                const StaticInfo& a = input_info(0);
                si.is_state = a.is_state;
                si.k = a.k;
                if (!node.params.contains("pairs") || !node.params.at("pairs").is_array()) {
                    bad(node.id, "merge needs a 'pairs' array");
                } else if (a.dims) {
                    std::vector<int> dims = *a.dims;
                    std::vector<int> role(dims.size(), 0);  // 1 = first, 2 = second
                    std::vector<int> partner(dims.size(), -1);
                    bool ok = true;
                    for (const json& pj : node.params.at("pairs")) {
                        if (!pj.is_array() || pj.size() != 2 || !pj[0].is_number_integer() ||
                            !pj[1].is_number_integer()) {
                            bad(node.id, "each merge pair must be [i, j]");
                            ok = false;
                            break;
                        }
                        const int i = pj[0].get<int>(), j = pj[1].get<int>();
                        if (i < 0 || j < 0 || i >= static_cast<int>(dims.size()) ||
                            j >= static_cast<int>(dims.size()) || i == j || role[i] || role[j]) {
                            bad(node.id, "merge pairs must be disjoint valid parties");
                            ok = false;
                            break;
                        }
                        role[i] = 1;
                        role[j] = 2;
                        partner[i] = j;
                    }
                    if (ok) {
                        std::vector<int> out;
                        for (std::size_t p = 0; p < dims.size(); ++p) {
                            if (role[p] == 2) continue;
                            out.push_back(role[p] == 1 ? dims[p] * dims[partner[p]] : dims[p]);
                        }
                        si.dims = std::move(out);
                    }
                }
            }
        } else if (node.op == "permute") {
            if (arity(1)) {
                const StaticInfo& a = input_info(0);
                si.is_state = a.is_state;
                si.k = a.k;
                if (!node.params.contains("perm") || !node.params.at("perm").is_array()) {
                    bad(node.id, "permute needs a 'perm' array");
                } else if (a.dims) {
                    const auto perm = node.params.at("perm").get<std::vector<int>>();
                    if (perm.size() != a.dims->size()) {
                        bad(node.id, "permutation length mismatch");
                    } else {
                        std::vector<bool> seen(perm.size(), false);
                        bool ok = true;
                        for (int p : perm) {
                            if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) {
                                bad(node.id, "not a permutation of [0, n)");
                                ok = false;
                                break;
                            }
                            seen[p] = true;
                        }
                        if (ok) {
                            si.dims = std::vector<int>(perm.size());
                            for (std::size_t t = 0; t < perm.size(); ++t)
                                (*si.dims)[t] = (*a.dims)[perm[t]];
                        }
                    }
                }
            }
        } else if (node.op == "apply") {
            if (arity(2)) {
                const StaticInfo& v = input_info(0);
                const StaticInfo& x = input_info(1);
                si.is_state = x.is_state;
                si.k = x.k;
                std::vector<int> targets;
                if (!node.params.contains("targets") || !node.params.at("targets").is_array()) {
                    bad(node.id, "apply needs a 'targets' array");
                } else {
                    targets = node.params.at("targets").get<std::vector<int>>();
                    if (targets.empty()) bad(node.id, "apply needs at least one target party");
                }
                if (x.dims && !targets.empty()) {
                    long long merged = 1;
                    bool ok = true;
                    std::set<int> tset(targets.begin(), targets.end());
                    if (tset.size() != targets.size()) {
                        bad(node.id, "duplicate target parties");
                        ok = false;
                    }
                    for (int t : targets) {
                        if (t < 0 || t >= static_cast<int>(x.dims->size())) {
                            bad(node.id, "target party " + std::to_string(t) + " out of range");
                            ok = false;
                            break;
                        }
                        merged *= (*x.dims)[t];
                    }
                    if (ok && v.k && merged > *v.k)
                        bad(node.id, "isometry input dimension " + std::to_string(*v.k) +
                                         " is smaller than the merged target dimension " +
                                         std::to_string(merged));
                    if (ok && v.dims) {
                        std::vector<int> out;
                        const int first = *std::min_element(targets.begin(), targets.end());
                        for (int p = 0; p < static_cast<int>(x.dims->size()); ++p) {
                            if (p == first)
                                out.insert(out.end(), v.dims->begin(), v.dims->end());
                            if (!tset.count(p)) out.push_back((*x.dims)[p]);
                        }
                        si.dims = std::move(out);
                    }
                }
            }
        } else if (node.op == "combine" || node.op == "combine_eliminate") {
            if (arity(2)) {
                const StaticInfo& a = input_info(0);
                const StaticInfo& b = input_info(1);
                if (!a.code || !b.code) {
                    bad(node.id, node.op + " inputs must be registry code nodes");
                } else {
                    if (a.code->K != b.code->K || a.code->K <= 1)
                        bad(node.id, "codes must have equal K > 1");
                    if (!a.code->is_qmds() || !b.code->is_qmds())
                        bad(node.id, "both codes must be QMDS");
                    long long alpha = 0, beta = 0;
                    bool range_ok = true;
                    if (node.op == "combine_eliminate") {
                        if (!get_int(node.params, "alpha", alpha) ||
                            !get_int(node.params, "beta", beta)) {
                            bad(node.id, "combine_eliminate needs integers 'alpha' and 'beta'");
                            range_ok = false;
                        } else if (alpha < 0 || alpha > a.code->d - 1 || beta < 0 ||
                                   beta > b.code->d - 1) {
                            bad(node.id, "need 0 <= alpha <= d1-1 and 0 <= beta <= d2-1");
                            range_ok = false;
                        }
                    }
                    if (range_ok) {
                        std::vector<int> dims(a.code->n - alpha, a.code->D);
                        dims.insert(dims.end(), b.code->n - beta, b.code->D);
                        si.dims = std::move(dims);
                        if (node.op == "combine") {
                            si.k = 1;
                            si.is_state = true;
                        } else {
                            long long k = 1;
                            for (int t = 0; t < alpha; ++t) k *= a.code->D;
                            for (int t = 0; t < beta; ++t) k *= b.code->D;
                            si.k = k;
                        }
                    }
                }
            }
        } else if (node.op == "predict") {
            arity(0);
            const std::string kind = node.params.value("kind", std::string{});
            if (kind == "corollary1") {
                long long n = 0, d = 0;
                if (!get_int(node.params, "n", n) || !get_int(node.params, "d", d))
                    bad(node.id, "predict corollary1 needs integers 'n' and 'd'");
            } else if (kind == "combine" || kind == "combine_eliminate") {
                if (node.params.contains("c1") != node.params.contains("c2"))
                    bad(node.id, "predict needs both 'c1' and 'c2' or neither");
                bool refs_ok = true;
                for (const char* ref : {"c1", "c2"}) {
                    if (node.params.contains(ref)) {
                        const std::string name =
                            node.params.at(ref).is_string()
                                ? node.params.at(ref).get<std::string>()
                                : std::string{};
                        if (!registry.has(name)) {
                            bad(node.id, std::string("unknown registry code '") + name + "'");
                            refs_ok = false;
                        }
                    }
                }
                if (!node.params.contains("c1")) {
                    long long v = 0;
                    for (const char* key : {"n1", "r1", "n2", "r2"})
                        if (!get_int(node.params, key, v))
                            bad(node.id, std::string("predict needs integer '") + key +
                                             "' (or code references)");
                    if (kind == "combine_eliminate")
                        for (const char* key : {"D1", "D2"})
                            if (!get_int(node.params, key, v))
                                bad(node.id, std::string("predict combine_eliminate needs '") +
                                                 key + "'");
                }
                (void)refs_ok;
                if (kind == "combine_eliminate") {
                    long long v = 0;
                    for (const char* key : {"alpha", "beta"})
                        if (!get_int(node.params, key, v))
                            bad(node.id,
                                std::string("predict combine_eliminate needs integer '") + key +
                                    "'");
                }
            } else {
                bad(node.id, "predict kind must be combine, combine_eliminate, or corollary1");
            }
        }
        } catch (const nlohmann::json::exception& e) {
            bad(node.id, std::string("malformed params: ") + e.what());
        }
        info[node.id] = std::move(si);
    }

    // declared outputs and verification requests
    if (doc.contains("outputs")) {
        if (!doc.at("outputs").is_array()) {
            bad("", "'outputs' must be an array of node ids");
        } else {
            for (const json& oj : doc.at("outputs")) {
                const std::string id = oj.is_string() ? oj.get<std::string>() : std::string{};
                if (!by_id.count(id))
                    bad("", "output references undefined node '" + id + "'");
                else
                    graph.outputs.push_back(id);
            }
        }
    }
    if (doc.contains("verify")) {
        if (!doc.at("verify").is_array()) {
            bad("", "'verify' must be an array");
        } else {
            for (const json& vj : doc.at("verify")) {
                VerifyRequest req;
                try {
                req.target = vj.value("target", std::string{});
                if (!by_id.count(req.target)) {
                    bad("", "verify request targets undefined node '" + req.target + "'");
                    continue;
                }
                req.check = vj.value("check", std::string{});
                if (!kChecks.count(req.check)) {
                    bad(req.target, "unknown check '" + req.check + "'");
                    continue;
                }
                if (req.check == "uniformity")
                    req.parameter = vj.value("r", 0);
                else if (req.check == "me_subspace")
                    req.parameter = vj.value("party", 0);
                else
                    req.parameter = vj.value("d", 0);
                req.trials = vj.value("trials", 100);
                if (vj.contains("tolerance")) req.tolerance = vj.at("tolerance").get<double>();
                const StaticInfo& si = info[req.target];
                if (req.check == "uniformity" && si.dims &&
                    (req.parameter < 1 ||
                     req.parameter >= static_cast<int>(si.dims->size())))
                    bad(req.target, "uniformity r out of range for the target's party count");
                if (req.check == "pure_code" && req.parameter < 2)
                    bad(req.target, "pure_code check needs d >= 2");
                graph.verifications.push_back(std::move(req));
                } catch (const nlohmann::json::exception& e) {
                    bad(req.target, std::string("malformed verify request: ") + e.what());
                }
            }
        }
    }

    if (!diags.empty()) throw RecipeParseError(std::move(diags));
    graph.nodes.reserve(nodes.size());
    for (std::size_t pos : order) graph.nodes.push_back(std::move(nodes[pos]));
    return graph;
}

namespace {

Subspace as_subspace(const Artifact& a, const std::string& node) {
    if (a.is_subspace()) return std::get<Subspace>(a.value);
    if (a.is_state()) return Subspace::from_state(std::get<PureState>(a.value));
    throw ValidationError("node '" + node + "': prediction artifacts carry no amplitudes");
}

PureState as_state(const Artifact& a, const std::string& node) {
    if (a.is_state()) return std::get<PureState>(a.value);
    if (a.is_subspace()) {
        const Subspace& w = std::get<Subspace>(a.value);
        if (w.dimension() == 1) return w.basis(0);
        throw ValidationError("node '" + node + "': expected a state, got a subspace of dimension " +
                              std::to_string(w.dimension()));
    }
    throw ValidationError("node '" + node + "': prediction artifacts carry no amplitudes");
}

template <typename Fn>
auto with_node_context(const std::string& id, Fn&& fn) {
    try {
        return fn();
    } catch (const CapacityError& e) {
        throw CapacityError("node '" + id + "': " + e.what());
    } catch (const DimensionError& e) {
        throw DimensionError("node '" + id + "': " + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError("node '" + id + "': " + e.what());
    } catch (const RegistryError& e) {
        throw RegistryError("node '" + id + "': " + e.what());
    } catch (const ConstructionError& e) {
        throw ConstructionError("node '" + id + "': " + e.what());
    } catch (const FormatError& e) {
        throw FormatError("node '" + id + "': " + e.what());
    } catch (const IndexError& e) {
        throw IndexError("node '" + id + "': " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError("node '" + id + "': " + e.what());
    }
}

json predict_result(const json& params, const Registry& reg) {
    const std::string kind = params.at("kind").get<std::string>();
    auto fetch = [&](const char* nk, const char* rk, const char* dk, const char* Dk,
                     const char* code_ref, int& n, int& r, int& d, int& D) {
        if (params.contains(code_ref)) {
            const CodeEntry& e = reg.get(params.at(code_ref).get<std::string>());
            n = e.params.n;
            d = e.params.d;
            r = e.params.d - 1;
            D = e.params.D;
        } else {
            n = params.at(nk).get<int>();
            r = params.contains(rk) ? params.at(rk).get<int>()
                                    : (params.contains(dk) ? params.at(dk).get<int>() - 1 : 0);
            d = r + 1;
            D = params.value(Dk, 0);
        }
    };
    json out;
    out["kind"] = kind;
    if (kind == "corollary1") {
        const int n = params.at("n").get<int>();
        const int d = params.at("d").get<int>();
        out["n"] = n;
        out["d"] = d;
        out["d_prime"] = predict_corollary1(n, d);
        return out;
    }
    int n1, r1, d1, D1, n2, r2, d2, D2;
    fetch("n1", "r1", "d1", "D1", "c1", n1, r1, d1, D1);
    fetch("n2", "r2", "d2", "D2", "c2", n2, r2, d2, D2);
    out["n1"] = n1;
    out["r1"] = r1;
    out["n2"] = n2;
    out["r2"] = r2;
    if (kind == "combine") {
        out["l"] = predict_combine(n1, r1, n2, r2);
        return out;
    }
    const int alpha = params.value("alpha", 0);
    const int beta = params.value("beta", 0);
    const CombinePrediction p =
        predict_combine_eliminate(n1, r1, D1, n2, r2, D2, alpha, beta);
    out["alpha"] = alpha;
    out["beta"] = beta;
    out["D1"] = D1;
    out["D2"] = D2;
    out["l"] = p.l;
    out["dim"] = p.dim;
    return out;
}

}  // namespace

ExecutionResult execute(const RecipeGraph& graph, const ExecOptions& opts) {
    const Registry& reg = opts.registry ? *opts.registry : Registry::builtin();
    const std::uint64_t seed = opts.seed_override.value_or(graph.seed);

    std::map<std::string, Artifact> by_id;
    std::map<std::string, Artifact> memo;  // content key -> artifact

    auto cache_path = [&](const std::string& key) {
        return (fs::path(opts.cache_dir) / (key + ".artifact.json")).string();
    };

    for (const RecipeNode& node : graph.nodes) {
        json key_doc;
        key_doc["op"] = node.op;
        key_doc["params"] = node.params;
        json input_keys = json::array();
        for (const std::string& in : node.inputs) input_keys.push_back(by_id.at(in).content_key);
        key_doc["inputs"] = input_keys;
        const std::string key = sha256_hex(key_doc.dump());

        if (const auto it = memo.find(key); it != memo.end()) {
            by_id.emplace(node.id, it->second);
            continue;
        }

        const bool disk_cacheable =
            !opts.cache_dir.empty() && node.op != "code" && node.op != "predict";
        if (disk_cacheable && fs::exists(cache_path(key))) {
            Artifact art;
            const std::string path = cache_path(key);
            const json doc = [&] {
                std::ifstream in(path, std::ios::binary);
                std::string text((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
                return json::parse(text);
            }();
            if (doc.value("kind", "") == "state")
                art.value = read_state(path);
            else
                art.value = read_subspace(path);
            art.content_key = key;
            memo.emplace(key, art);
            by_id.emplace(node.id, std::move(art));
            continue;
        }

        Artifact art = with_node_context(node.id, [&]() -> Artifact {
            Artifact out;
            out.content_key = key;
            if (node.op == "code") {
                const std::string name = node.params.at("name").get<std::string>();
                out.value = reg.materialize(name);
                out.code_params = reg.get(name).params;
            } else if (node.op == "import") {
                const Subspace w = read_subspace_or_state(node.params.at("file").get<std::string>());
                if (w.dimension() == 1)
                    out.value = w.basis(0);
                else
                    out.value = w;
            } else if (node.op == "me_state") {
                out.value = me_state(node.params.at("k").get<int>());
            } else if (node.op == "me_subspace") {
                out.value = me_subspace(node.params.at("p").get<int>());
            } else if (node.op == "glue") {
                out.value = glue(as_subspace(by_id.at(node.inputs[0]), node.id),
                                 as_subspace(by_id.at(node.inputs[1]), node.id));
            } else if (node.op == "eliminate") {
                Subspace w = as_subspace(by_id.at(node.inputs[0]), node.id);
                if (node.params.contains("r"))
                    w = w.with_claimed_uniformity(node.params.at("r").get<int>());
                out.value = eliminate(w, node.params.at("party").get<int>());
            } else if (node.op == "split") {
                const Artifact& a = by_id.at(node.inputs[0]);
                const int party = node.params.at("party").get<int>();
                const int d1 = node.params.at("d1").get<int>();
                const int d2 = node.params.at("d2").get<int>();
                if (a.is_state())
                    out.value = split(as_state(a, node.id), party, d1, d2);
                else
                    out.value = split(as_subspace(a, node.id), party, d1, d2);
            } else if (node.op == "merge") {
                std::vector<std::pair<int, int>> pairs;
                for (const json& pj : node.params.at("pairs"))
                    pairs.emplace_back(pj[0].get<int>(), pj[1].get<int>());
                const Artifact& a = by_id.at(node.inputs[0]);
                if (a.is_state())
                    out.value = merge(as_state(a, node.id), pairs);
                else
                    out.value = merge(as_subspace(a, node.id), pairs);
            } else if (node.op == "permute") {
                const auto perm = node.params.at("perm").get<std::vector<int>>();
                const Artifact& a = by_id.at(node.inputs[0]);
                if (a.is_state()) {
                    out.value = permute_parties(as_state(a, node.id), perm);
                } else {
                    const Subspace w = as_subspace(a, node.id);
                    std::vector<PureState> basis;
                    for (int j = 0; j < w.dimension(); ++j)
                        basis.push_back(permute_parties(w.basis(j), perm));
                    Shape shape = basis.front().shape();
                    out.value = Subspace(std::move(shape), std::move(basis),
                                         w.claimed_uniformity());
                }
            } else if (node.op == "apply") {
                const Artifact& va = by_id.at(node.inputs[0]);
                const Artifact& xa = by_id.at(node.inputs[1]);
                const Subspace v = as_subspace(va, node.id);
                const PartySubset targets(node.params.at("targets").get<std::vector<int>>());
                if (xa.is_state())
                    out.value = apply_isometry(v, as_state(xa, node.id), targets);
                else
                    out.value = apply_isometry(v, as_subspace(xa, node.id), targets);
            } else if (node.op == "combine" || node.op == "combine_eliminate") {
                const Artifact& a = by_id.at(node.inputs[0]);
                const Artifact& b = by_id.at(node.inputs[1]);
                if (!a.code_params || !b.code_params)
                    throw PreconditionError("combine inputs must be registry code nodes");
                MaterializedCode c1{*a.code_params, as_subspace(a, node.id)};
                MaterializedCode c2{*b.code_params, as_subspace(b, node.id)};
                if (node.op == "combine") {
                    out.value = combine(c1, c2);
                } else {
                    out.value = combine_eliminate(c1, c2, node.params.at("alpha").get<int>(),
                                                  node.params.at("beta").get<int>());
                }
            } else if (node.op == "predict") {
                out.value = predict_result(node.params, reg);
            } else {
                throw ValidationError("unknown op '" + node.op + "'");
            }
            return out;
        });

        if (disk_cacheable && !art.is_prediction()) {
            fs::create_directories(opts.cache_dir);
            const std::string path = cache_path(key);
            if (art.is_state())
                write_state(path, std::get<PureState>(art.value));
            else
                write_subspace(path, std::get<Subspace>(art.value));
        }
        memo.emplace(key, art);
        by_id.emplace(node.id, std::move(art));
    }

    ExecutionResult result;

    // verifications all run, regardless of individual failures
    for (std::size_t vi = 0; vi < graph.verifications.size(); ++vi) {
        const VerifyRequest& req = graph.verifications[vi];
        VerifyOptions vopts;
        vopts.tolerance = req.tolerance.value_or(opts.tolerance);
        vopts.threads = opts.threads;
        vopts.seed = seed ^ (0x517cc1b727220a95ull * (vi + 1));
        const Artifact& target = by_id.at(req.target);
        VerificationReport rep = with_node_context(req.target, [&] {
            if (req.check == "uniformity") {
                if (target.is_state())
                    return state_uniformity(std::get<PureState>(target.value), req.parameter,
                                            vopts, req.target);
                return subspace_uniformity(as_subspace(target, req.target), req.parameter, vopts,
                                           req.target);
            }
            if (req.check == "pure_code")
                return verify_pure_code(as_subspace(target, req.target), req.parameter, vopts,
                                        req.target);
            if (req.check == "qmds_projector")
                return qmds_projector_check(as_subspace(target, req.target), req.parameter, vopts,
                                            req.target);
            return me_subspace_check(as_subspace(target, req.target), req.parameter, req.trials,
                                     vopts, req.target);
        });
        result.all_passed = result.all_passed && rep.pass;
        result.reports.push_back(std::move(rep));
    }

    // declared outputs
    for (const std::string& id : graph.outputs) {
        const Artifact& art = by_id.at(id);
        result.artifacts.emplace(id, art);
        if (!opts.out_dir.empty()) {
            fs::create_directories(opts.out_dir);
            std::string path;
            if (art.is_state()) {
                path = (fs::path(opts.out_dir) / (id + ".state.json")).string();
                write_state(path, std::get<PureState>(art.value));
            } else if (art.is_subspace()) {
                path = (fs::path(opts.out_dir) / (id + ".subspace.json")).string();
                write_subspace(path, std::get<Subspace>(art.value));
            } else {
                path = (fs::path(opts.out_dir) / (id + ".prediction.json")).string();
                std::ofstream outf(path, std::ios::binary | std::ios::trunc);
                outf << std::get<json>(art.value).dump(2) << "\n";
            }
            result.written_files.push_back(path);
        }
    }

    result.report_doc = reports_to_json(result.reports);
    // predictions ride along in the report document for inspection
    json predictions = json::object();
    for (const auto& [id, art] : result.artifacts)
        if (art.is_prediction()) predictions[id] = std::get<json>(art.value);
    if (!predictions.empty()) result.report_doc["predictions"] = predictions;
    return result;
}

}  // namespace forge
