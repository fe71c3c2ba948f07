#include "forge/registry.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "forge/capacity.hpp"
#include "forge/errors.hpp"
#include "forge/io.hpp"

namespace forge {

namespace detail {
extern const char* builtin_registry_json;
}

using nlohmann::json;

namespace {

GeneratorRow parse_row(const json& j) {
    GeneratorRow row;
    row.x = j.at("x").get<std::vector<int>>();
    row.z = j.at("z").get<std::vector<int>>();
    row.phase = j.value("phase", 0);
    return row;
}

Realization parse_realization(const json& j, const CodeParams& params) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "stabilizer") {
        StabilizerData data;
        data.spec.p = j.at("p").get<int>();
        data.spec.num_parties = params.n;
        for (const json& r : j.at("generators")) data.spec.generators.push_back(parse_row(r));
        return data;
    }
    if (kind == "stabilizer_gf") {
        GfqData data;
        data.spec.p = j.at("p").get<int>();
        data.spec.m = j.at("m").get<int>();
        data.spec.num_parties = params.n;
        if (j.contains("modulus")) data.spec.modulus = j.at("modulus").get<std::vector<int>>();
        for (const json& r : j.at("generators")) {
            GfqGeneratorRow row;
            row.a = r.at("a").get<std::vector<int>>();
            row.b = r.at("b").get<std::vector<int>>();
            data.spec.generators.push_back(std::move(row));
        }
        return data;
    }
    if (kind == "css_grs") {
        CssGrsData data;
        data.p = j.at("p").get<int>();
        data.n = j.at("n").get<int>();
        data.kappa = j.at("kappa").get<int>();
        data.points = j.at("points").get<std::vector<int>>();
        data.multipliers = j.at("multipliers").get<std::vector<int>>();
        return data;
    }
    if (kind == "derived") {
        DerivedData data;
        data.op = j.at("op").get<std::string>();
        data.of = j.at("of").get<std::string>();
        data.with = j.value("with", std::string{});
        data.party = j.value("party", -1);
        data.alpha = j.value("alpha", 0);
        data.beta = j.value("beta", 0);
        if (j.contains("split_factors"))
            data.split_factors = j.at("split_factors").get<std::vector<int>>();
        return data;
    }
    if (kind == "import") {
        ImportData data;
        data.file = j.at("file").get<std::string>();
        return data;
    }
    if (kind == "unavailable") {
        UnavailableData data;
        data.reason = j.value("reason", std::string{"no realization data"});
        return data;
    }
    throw RegistryError("registry: unknown realization kind '" + kind + "'");
}

}  // namespace

Registry Registry::from_json_text(const std::string& text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("registry: ") + e.what(), static_cast<long long>(e.byte));
    }
    if (!doc.is_object() || doc.value("format_version", 0) != kFormatVersion)
        throw FormatError("registry: missing or unsupported format_version");

    Registry reg;
    reg.base_dir_ = base_dir;
    if (!doc.contains("codes") || !doc.at("codes").is_array())
        throw FormatError("registry: missing 'codes' array");
    try {
    for (const json& cj : doc.at("codes")) {
        CodeEntry entry;
        entry.name = cj.at("name").get<std::string>();
        if (cj.contains("aliases")) entry.aliases = cj.at("aliases").get<std::vector<std::string>>();
        entry.params.n = cj.at("n").get<int>();
        entry.params.K = cj.at("K").get<long long>();
        entry.params.d = cj.at("d").get<int>();
        entry.params.D = cj.at("D").get<int>();
        entry.optional = cj.value("optional", false);
        entry.note = cj.value("note", std::string{});
        entry.realization = parse_realization(cj.at("realization"), entry.params);

        const std::size_t at = reg.entries_.size();
        if (reg.index_.count(entry.name))
            throw RegistryError("registry: duplicate name '" + entry.name + "'");
        reg.index_[entry.name] = at;
        for (const std::string& a : entry.aliases) {
            if (reg.index_.count(a))
                throw RegistryError("registry: duplicate alias '" + a + "'");
            reg.index_[a] = at;
        }
        reg.entries_.push_back(std::move(entry));
    }
    } catch (const json::exception& e) {
        throw FormatError(std::string("registry: malformed entry: ") + e.what());
    }
    return reg;
}

Registry Registry::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("registry: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text, std::filesystem::path(path).parent_path().string());
}

const Registry& Registry::builtin() {
    static const Registry reg = from_json_text(detail::builtin_registry_json, ".");
    return reg;
}

Registry Registry::fresh_builtin() { return from_json_text(detail::builtin_registry_json, "."); }

std::vector<std::string> Registry::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const CodeEntry& e : entries_) out.push_back(e.name);
    return out;
}

bool Registry::has(const std::string& name) const { return index_.count(name) > 0; }

const CodeEntry& Registry::resolve(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw RegistryError("registry: unknown code '" + name + "'");
    return entries_[it->second];
}

const CodeEntry& Registry::get(const std::string& name) const { return resolve(name); }

Subspace Registry::materialize(const std::string& name) const {
    const CodeEntry& entry = resolve(name);
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        const auto it = cache_->spaces.find(entry.name);
        if (it != cache_->spaces.end()) return it->second;
    }
    Subspace space = build(entry);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto [it, inserted] = cache_->spaces.emplace(entry.name, std::move(space));
    return it->second;
}

MaterializedCode Registry::materialize_code(const std::string& name) const {
    const CodeEntry& entry = resolve(name);
    return MaterializedCode{entry.params, materialize(entry.name)};
}

Subspace Registry::build(const CodeEntry& entry) const {
    // capacity comes first: out-of-scale entries must refuse densification
    // regardless of whether realization data is present
    double dense = 1.0;
    for (int i = 0; i < entry.params.n; ++i) dense *= entry.params.D;
    if (dense > static_cast<double>(capacity()))
        throw CapacityError("registry '" + entry.name + "': dense materialization needs " +
                            std::to_string(dense) + " amplitudes, above the capacity cap of " +
                            std::to_string(capacity()) +
                            " (set FORGE_CAPACITY to raise the limit)");

    Subspace space = std::visit(
        [&](const auto& data) -> Subspace {
            using T = std::decay_t<decltype(data)>;
            if constexpr (std::is_same_v<T, StabilizerData>) {
                StabilizerSpec spec = data.spec;
                return codespace_from_stabilizer(spec)
                    .with_claimed_uniformity(entry.params.d - 1);
            } else if constexpr (std::is_same_v<T, GfqData>) {
                if (data.spec.m != 1 && data.spec.m != 2 && data.spec.m != 4)
                    throw RegistryError("registry '" + entry.name +
                                        "': pairwise re-merging supports m in {1, 2, 4}");
                const StabilizerSpec expanded = expand_prime_power(data.spec);
                Subspace qubit_space = codespace_from_stabilizer(expanded);
                // fold each m-tuple of prime parties back into one party
                Subspace merged = qubit_space;
                for (int step = 0; step < data.spec.m / 2; ++step) {
                    std::vector<std::pair<int, int>> pairs;
                    const int parties = merged.shape().num_parties();
                    for (int i = 0; i + 1 < parties; i += 2) pairs.emplace_back(i, i + 1);
                    merged = merge(merged, pairs);
                }
                return merged.with_claimed_uniformity(entry.params.d - 1);
            } else if constexpr (std::is_same_v<T, CssGrsData>) {
                const Field f = Field::make(data.p, 1);
                const ClassicalCode code = grs_generator(f, data.n, data.kappa, data.points,
                                                         data.multipliers);
                if (!self_orthogonality_check(code))
                    throw RegistryError("registry '" + entry.name +
                                        "': GRS data is not self-orthogonal");
                const StabilizerSpec spec = css(code.generator(), code.generator(), data.p);
                return codespace_from_stabilizer(spec)
                    .with_claimed_uniformity(entry.params.d - 1);
            } else if constexpr (std::is_same_v<T, DerivedData>) {
                if (data.op == "eliminate") {
                    return eliminate(materialize(data.of), data.party)
                        .with_claimed_uniformity(entry.params.d - 1);
                }
                if (data.op == "tensor_merge") {
                    const Subspace base = materialize(data.of);
                    const int n = base.shape().num_parties();
                    Subspace glued = glue(base, base);
                    std::vector<std::pair<int, int>> pairs;
                    for (int i = 0; i < n; ++i) pairs.emplace_back(i, i + n);
                    return merge(glued, pairs).with_claimed_uniformity(entry.params.d - 1);
                }
                if (data.op == "split_all") {
                    if (data.split_factors.size() != 2)
                        throw RegistryError("registry '" + entry.name +
                                            "': split_all needs two factors");
                    Subspace cur = materialize(data.of);
                    const int original = cur.shape().num_parties();
                    for (int i = original - 1; i >= 0; --i)
                        cur = split(cur, i, data.split_factors[0], data.split_factors[1]);
                    return cur.with_claimed_uniformity(entry.params.d - 1);
                }
                if (data.op == "combine_eliminate") {
                    return combine_eliminate(materialize_code(data.of),
                                             materialize_code(data.with), data.alpha, data.beta)
                        .with_claimed_uniformity(entry.params.d - 1);
                }
                throw RegistryError("registry '" + entry.name + "': unknown derived op '" +
                                    data.op + "'");
            } else if constexpr (std::is_same_v<T, ImportData>) {
                const std::filesystem::path p = std::filesystem::path(base_dir_) / data.file;
                if (!std::filesystem::exists(p))
                    throw RegistryError("registry '" + entry.name +
                                        "': external data file '" + p.string() +
                                        "' not provided (feature-gated entry)");
                return read_subspace_or_state(p.string())
                    .with_claimed_uniformity(entry.params.d - 1);
            } else {
                const UnavailableData& u = data;
                throw RegistryError("registry '" + entry.name + "': no realization available (" +
                                    u.reason + ")");
            }
        },
        entry.realization);

    if (space.dimension() != entry.params.K)
        throw RegistryError("registry '" + entry.name + "': materialized dimension " +
                            std::to_string(space.dimension()) + " does not match declared K = " +
                            std::to_string(entry.params.K));
    if (space.shape().num_parties() != entry.params.n)
        throw RegistryError("registry '" + entry.name + "': materialized party count mismatch");
    return space;
}

std::vector<VerificationReport> selfcheck_entry(const Registry& reg, const std::string& name,
                                                const VerifyOptions& opts) {
    const CodeEntry& entry = reg.get(name);
    const Subspace space = reg.materialize(name);
    std::vector<VerificationReport> reports;
    reports.push_back(verify_pure_code(space, entry.params.d, opts, entry.name));
    if (entry.params.d >= 2 && entry.params.n >= 2) {
        reports.push_back(
            subspace_uniformity(space, entry.params.d - 1, opts, entry.name));
    }
    if (entry.is_qmds() && entry.params.d >= 2 && entry.params.n - (entry.params.d - 1) >= 1 &&
        entry.params.n - (entry.params.d - 1) < entry.params.n) {
        reports.push_back(qmds_projector_check(space, entry.params.d, opts, entry.name));
    }
    return reports;
}

}  // namespace forge
