// forge: build and verify uniform states, subspaces, and codes from recipe
// files. Exit codes: 0 all checks pass, 1 verification failure, 2 usage or
// format errors.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "forge/capacity.hpp"
#include "forge/io.hpp"
#include "forge/recipe.hpp"
#include "forge/registry.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    double tolerance = 1e-9;
    int threads = 1;
    std::string registry_path;
};

const forge::Registry& pick_registry(const CommonOpts& common,
                                     std::optional<forge::Registry>& storage) {
    if (common.registry_path.empty()) return forge::Registry::builtin();
    storage = forge::Registry::load_file(common.registry_path);
    return *storage;
}

void print_report_line(const forge::VerificationReport& rep) {
    const char* param_name = "r";
    if (rep.kind == "me_subspace") param_name = "party";
    if (rep.kind == "pure_code" || rep.kind == "qmds_projector") param_name = "d";
    std::printf("[%s] %-20s %s=%d  target=%s  worst=%.3e  subsets=%llu  (%.1f ms)\n",
                rep.pass ? "PASS" : "FAIL", rep.kind.c_str(), param_name, rep.parameter,
                rep.target.empty() ? "-" : rep.target.c_str(), rep.worst_deviation,
                static_cast<unsigned long long>(rep.subsets_checked), rep.wall_ms);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform-state and code forge"};
    app.require_subcommand(1);

    CommonOpts common;
    std::optional<forge::Registry> registry_storage;

    // --- run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "execute a recipe file");
    std::string recipe_path, out_dir, report_path, cache_dir;
    std::uint64_t seed = 0;
    bool have_seed = false;
    run->add_option("recipe", recipe_path, "recipe JSON file")->required();
    run->add_option("--out", out_dir, "directory for declared outputs");
    run->add_option("--report", report_path, "write the verification report here");
    run->add_option("--cache", cache_dir, "content-addressed cache directory");
    run->add_option("--tol", common.tolerance, "verification tolerance");
    run->add_option("--threads", common.threads, "verification worker threads");
    run->add_option("--seed", seed, "override the recipe seed")->each([&](const std::string&) {
        have_seed = true;
    });
    run->add_option("--registry", common.registry_path, "registry data file override");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check a state or subspace file");
    std::string verify_path;
    int uniform_r = -1, pure_d = -1;
    verify->add_option("file", verify_path, "state or subspace file")->required();
    verify->add_option("--uniform", uniform_r, "check r-uniformity");
    verify->add_option("--pure-distance", pure_d, "check purity at distance d");
    verify->add_option("--tol", common.tolerance, "verification tolerance");
    verify->add_option("--threads", common.threads, "verification worker threads");

    // --- codes -------------------------------------------------------------
    auto* codes = app.add_subcommand("codes", "registry operations");
    codes->require_subcommand(1);
    auto* codes_list = codes->add_subcommand("list", "list registry entries");
    auto* codes_show = codes->add_subcommand("show", "show one entry");
    std::string show_name;
    codes_show->add_option("name", show_name, "registry code name")->required();
    auto* codes_selfcheck =
        codes->add_subcommand("selfcheck", "materialize and verify registry entries");
    std::vector<std::string> selfcheck_names;
    codes_selfcheck->add_option("names", selfcheck_names,
                                "entries to check (default: all non-optional)");
    for (auto* sc : {codes_list, codes_show, codes_selfcheck}) {
        sc->add_option("--registry", common.registry_path, "registry data file override");
        sc->add_option("--tol", common.tolerance, "verification tolerance");
        sc->add_option("--threads", common.threads, "verification worker threads");
    }

    // --- predict -----------------------------------------------------------
    auto* predict = app.add_subcommand("predict", "closed-form parameter predictions");
    predict->require_subcommand(1);
    auto* p_combine = predict->add_subcommand("combine", "l for combining two codes");
    std::vector<int> combine_args;
    p_combine->add_option("params", combine_args, "n1 r1 n2 r2")->expected(4);
    auto* p_cor1 = predict->add_subcommand("corollary1", "distance of the doubled code");
    std::vector<int> cor1_args;
    p_cor1->add_option("params", cor1_args, "n d")->expected(2);
    auto* p_ce = predict->add_subcommand("combine-eliminate",
                                         "dimension and l after eliminating alpha+beta parties");
    std::vector<int> ce_args;
    p_ce->add_option("params", ce_args, "n1 r1 D1 n2 r2 D2 alpha beta")->expected(8);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) {
            const forge::Registry& reg = pick_registry(common, registry_storage);
            const forge::RecipeGraph graph = forge::parse_recipe_file(recipe_path, reg);
            forge::ExecOptions opts;
            opts.out_dir = out_dir;
            opts.cache_dir = cache_dir;
            opts.tolerance = common.tolerance;
            opts.threads = common.threads;
            opts.registry = &reg;
            if (have_seed) opts.seed_override = seed;
            const forge::ExecutionResult result = forge::execute(graph, opts);
            for (const auto& rep : result.reports) print_report_line(rep);
            if (result.report_doc.contains("predictions")) {
                for (const auto& [id, pred] : result.report_doc.at("predictions").items())
                    std::printf("predict %s: %s\n", id.c_str(), pred.dump().c_str());
            }
            for (const auto& f : result.written_files) std::printf("wrote %s\n", f.c_str());
            if (!report_path.empty()) {
                std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
                if (!out) throw forge::FormatError("cannot write '" + report_path + "'");
                out << result.report_doc.dump(2) << "\n";
                std::printf("report %s\n", report_path.c_str());
            }
            return result.all_passed ? kExitPass : kExitVerifyFailed;
        }

        if (*verify) {
            if ((uniform_r < 0) == (pure_d < 0)) {
                std::fprintf(stderr, "verify: pass exactly one of --uniform or --pure-distance\n");
                return kExitUsage;
            }
            const forge::Subspace w = forge::read_subspace_or_state(verify_path);
            forge::VerifyOptions vopts;
            vopts.tolerance = common.tolerance;
            vopts.threads = common.threads;
            forge::VerificationReport rep;
            if (uniform_r >= 0) {
                if (w.dimension() == 1)
                    rep = forge::state_uniformity(w.basis(0), uniform_r, vopts, verify_path);
                else
                    rep = forge::subspace_uniformity(w, uniform_r, vopts, verify_path);
            } else {
                rep = forge::verify_pure_code(w, pure_d, vopts, verify_path);
            }
            print_report_line(rep);
            return rep.pass ? kExitPass : kExitVerifyFailed;
        }

        if (*codes_list) {
            const forge::Registry& reg = pick_registry(common, registry_storage);
            for (const std::string& name : reg.names()) {
                const forge::CodeEntry& e = reg.get(name);
                std::printf("%-16s n=%-3d K=%-4lld d=%-2d D=%-2d %s%s\n", e.name.c_str(),
                            e.params.n, e.params.K, e.params.d, e.params.D,
                            e.optional ? "[optional] " : "", e.note.c_str());
            }
            return kExitPass;
        }

        if (*codes_show) {
            const forge::Registry& reg = pick_registry(common, registry_storage);
            const forge::CodeEntry& e = reg.get(show_name);
            std::printf("name: %s\n", e.name.c_str());
            for (const auto& a : e.aliases) std::printf("alias: %s\n", a.c_str());
            std::printf("params: ((%d,%lld,%d))_%d%s\n", e.params.n, e.params.K, e.params.d,
                        e.params.D, e.is_qmds() ? "  [QMDS]" : "");
            if (e.optional) std::printf("optional: yes\n");
            if (!e.note.empty()) std::printf("note: %s\n", e.note.c_str());
            try {
                const forge::Subspace w = reg.materialize(e.name);
                std::printf("materialized: %d vector(s) over %s\n", w.dimension(),
                            w.shape().to_string().c_str());
            } catch (const forge::Error& err) {
                std::printf("materialization unavailable: %s\n", err.what());
            }
            return kExitPass;
        }

        if (*codes_selfcheck) {
            const forge::Registry& reg = pick_registry(common, registry_storage);
            forge::VerifyOptions vopts;
            vopts.tolerance = common.tolerance;
            vopts.threads = common.threads;
            std::vector<std::string> names = selfcheck_names;
            if (names.empty()) {
                for (const std::string& n : reg.names())
                    if (!reg.get(n).optional) names.push_back(n);
            }
            bool all = true;
            for (const std::string& name : names) {
                for (const auto& rep : forge::selfcheck_entry(reg, name, vopts)) {
                    print_report_line(rep);
                    all = all && rep.pass;
                }
            }
            return all ? kExitPass : kExitVerifyFailed;
        }

        if (*p_combine) {
            std::printf("l = %d\n", forge::predict_combine(combine_args[0], combine_args[1],
                                                           combine_args[2], combine_args[3]));
            return kExitPass;
        }
        if (*p_cor1) {
            std::printf("d' = %d\n", forge::predict_corollary1(cor1_args[0], cor1_args[1]));
            return kExitPass;
        }
        if (*p_ce) {
            const forge::CombinePrediction p = forge::predict_combine_eliminate(
                ce_args[0], ce_args[1], ce_args[2], ce_args[3], ce_args[4], ce_args[5],
                ce_args[6], ce_args[7]);
            std::printf("dim = %lld\nl = %d\n", p.dim, p.l);
            return kExitPass;
        }
    } catch (const forge::RecipeParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const forge::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
