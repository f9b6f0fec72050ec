// apnforge -- command-line front end for the quadratic APN construction
// toolkit: bent-space enumeration, the two extension pipelines,
// invariants, verification, dedup, and class-count estimation.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apnforge/estimate.hpp"
#include "apnforge/io.hpp"
#include "apnforge/search.hpp"

using namespace apn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Config {
    int workers = 1;
    int attempts = 256;
    std::optional<u64> max_results;
    std::optional<std::chrono::milliseconds> time_limit;
    std::string b6_predicate = "all";  // final-level selection predicate
};

int env_workers() {
    if (const char* w = std::getenv("APNFORGE_WORKERS")) {
        int v = std::atoi(w);
        if (v >= 1) return v;
    }
    return 1;
}

void load_config_file(const std::string& path, Config& cfg) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config " + path);
    nlohmann::json j = nlohmann::json::parse(is);
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("attempts")) cfg.attempts = j["attempts"].get<int>();
    if (j.contains("max_results")) cfg.max_results = j["max_results"].get<u64>();
    if (j.contains("time_limit_ms"))
        cfg.time_limit = std::chrono::milliseconds(j["time_limit_ms"].get<u64>());
    if (j.contains("b6_predicate")) cfg.b6_predicate = j["b6_predicate"].get<std::string>();
}

// per-level targets: comma-separated levels, each "any" or "b" or "b:k"
std::vector<std::optional<ExtensionTarget>> parse_profile(const std::string& text) {
    std::vector<std::optional<ExtensionTarget>> out;
    if (text.empty() || text == "none") return out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item == "any" || item.empty()) {
            out.emplace_back(std::nullopt);
            continue;
        }
        ExtensionTarget t;
        auto colon = item.find(':');
        try {
            t.bent_count = std::stoi(item.substr(0, colon));
            if (colon != std::string::npos)
                t.k_value = std::stoull(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad profile level '" + item +
                                        "' (expected b, b:k, or any)");
        }
        out.emplace_back(t);
    }
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    return os;
}

std::string j2_text(const QuadSpace& s) {
    std::ostringstream os;
    bool first = true;
    for (auto& [rank, cnt] : j2_signature(s).counts) {
        if (!first) os << ',';
        os << rank << ':' << cnt;
        first = false;
    }
    return os.str();
}

std::string profile_text(const QuadSpace& s) {
    std::ostringstream os;
    for (const BSPair& bs : profile(s, s.dim()))
        os << '(' << bs.bent << ',' << bs.k << ')';
    return os.str();
}

int cmd_gen_bent(int n, int m, const std::string& out_path, const Config& cfg) {
    std::vector<QuadSpace> classes = enumerate_bent_spaces(n, m, 4, cfg.workers);
    std::ofstream os = open_out(out_path);
    for (const QuadSpace& s : classes) export_quad_basis(os, s);
    std::cerr << "gen-bent: " << classes.size() << " class representative(s)\n";
    return kExitOk;
}

int cmd_extend_bent(const std::string& seeds_path, const std::string& profile_text_in,
                    const std::string& out_path, u64 seed,
                    const std::string& checkpoint_path, const Config& cfg) {
    std::vector<QuadSpace> seeds = import_spaces(seeds_path);
    if (seeds.empty()) throw std::invalid_argument("no seed spaces in " + seeds_path);
    auto targets = parse_profile(profile_text_in);

    DedupStore store;
    if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path))
        load_checkpoint(checkpoint_path, store);
    size_t known = store.size();

    SearchBudget budget;
    budget.seed = seed;
    budget.attempts = cfg.attempts;
    budget.max_results = cfg.max_results;
    budget.time_limit = cfg.time_limit;

    std::ofstream os = open_out(out_path);
    u64 written = 0;
    bent_pipeline(
        seeds, targets, budget,
        [&](const VectorialFunction& f) {
            if (store.insert(f, "bent-pipeline", seed, "final")) {
                export_value_tables(os, {f});
                ++written;
                if (!checkpoint_path.empty())
                    save_checkpoint(checkpoint_path, {"emitting", {}}, store);
            }
            return true;
        },
        cfg.workers);
    if (!checkpoint_path.empty())
        save_checkpoint(checkpoint_path, {"done", {}}, store);
    std::cerr << "extend-bent: " << written << " new class(es), " << known
              << " known before\n";
    return kExitOk;
}

int cmd_extend_input(int n_start, int m, const std::string& out_path, u64 seed,
                     const Config& cfg) {
    SearchBudget budget;
    budget.seed = seed;
    budget.attempts = cfg.attempts;
    budget.max_results = cfg.max_results;
    budget.time_limit = cfg.time_limit;

    DedupStore store;
    std::ofstream os = open_out(out_path);
    u64 written = 0;
    input_pipeline(
        n_start, m, budget,
        [&](const VectorialFunction& f) {
            if (store.insert(f, "input-pipeline", seed, "final")) {
                export_value_tables(os, {f});
                ++written;
            }
            return true;
        },
        cfg.workers);
    std::cerr << "extend-input: " << written << " class(es)\n";
    return kExitOk;
}

int cmd_invariants(const std::string& in_path, const std::string& which) {
    bool want_od = which.find("od") != std::string::npos;
    bool want_j2 = which.find("j2") != std::string::npos;
    bool want_profile = which.find("profile") != std::string::npos;
    if (!want_od && !want_j2 && !want_profile)
        throw std::invalid_argument("--which must name od, j2, and/or profile");
    for (const VectorialFunction& f : import_functions(in_path)) {
        nlohmann::json j{{"id", content_id(f)}, {"n", f.n}, {"m", f.m}};
        if (want_od) {
            if (f.n != f.m)
                throw std::invalid_argument("od invariant requires n = m (id " +
                                            content_id(f) + ")");
            j["od"] = od_signature_serialize(od_signature(f));
        }
        if (want_j2 || want_profile) {
            QuadSpace s = comp_space(f);
            if (want_j2) j["j2"] = j2_text(s);
            if (want_profile) j["profile"] = profile_text(s);
        }
        std::cout << j.dump() << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& in_path) {
    int rc = kExitOk;
    for (const VectorialFunction& f : import_functions(in_path)) {
        std::string id = content_id(f);
        if (f.n != f.m) {
            std::cout << id << " skip: verification requires n = m\n";
            rc = kExitValidation;
            continue;
        }
        bool by_delta = differential_uniformity_at_most(f, 2);
        bool by_alpha = is_apn_alpha(f);
        std::optional<bool> by_flat;
        if (is_quadratic(f)) {
            QuadSpace s = comp_space(f);
            if (s.dim() == f.n) by_flat = is_apn_flat(s);
        }
        bool agree = (by_delta == by_alpha) && (!by_flat || *by_flat == by_delta);
        std::cout << id << " delta:" << by_delta << " alpha:" << by_alpha;
        if (by_flat) std::cout << " flat:" << *by_flat;
        if (!agree) {
            std::cout << " DISAGREE";
            rc = kExitValidation;
        } else if (!by_delta) {
            std::cout << " not-apn";
            rc = kExitValidation;
        }
        std::cout << '\n';
    }
    return rc;
}

int cmd_dedup(const std::string& in_path, const std::string& db_path) {
    DedupStore store;
    if (std::filesystem::exists(db_path)) {
        std::ifstream is(db_path);
        if (!is) throw IoError("cannot open " + db_path);
        store.load(is);
    }
    size_t before = store.size();
    u64 scanned = 0;
    for (const VectorialFunction& f : import_functions(in_path)) {
        ++scanned;
        store.insert(f);
    }
    {
        std::ofstream os(db_path);
        if (!os) throw IoError("cannot write " + db_path);
        store.save(os);
    }
    std::cout << "scanned " << scanned << ", classes " << before << " -> "
              << store.size() << '\n';
    return kExitOk;
}

int cmd_find_bent_subspace(const std::string& in_path, int dim) {
    for (const VectorialFunction& f : import_functions(in_path)) {
        std::optional<QuadSpace> v = find_bent_subspace(comp_space(f), dim);
        std::cout << "# " << content_id(f) << '\n';
        if (v) export_quad_basis(std::cout, *v);
        else std::cout << "# none\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction and classification toolkit for quadratic APN functions"};
    app.require_subcommand(1);

    Config cfg;
    cfg.workers = env_workers();
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)");

    // gen-bent
    int gb_n = 0, gb_m = 0;
    std::string gb_out;
    auto* gen_bent = app.add_subcommand("gen-bent", "enumerate vectorial bent space classes");
    gen_bent->add_option("--n", gb_n)->required();
    gen_bent->add_option("--m", gb_m)->required();
    gen_bent->add_option("--out", gb_out)->required();

    // extend-bent
    std::string eb_seeds, eb_profile, eb_out, eb_checkpoint;
    u64 eb_seed = 0;
    auto* extend_bent =
        app.add_subcommand("extend-bent", "extend bent seed spaces to APN functions");
    extend_bent->add_option("--seeds", eb_seeds)->required();
    extend_bent->add_option("--profile", eb_profile,
                            "per-level BS targets, e.g. 30:34,54 (or none)")
        ->required();
    extend_bent->add_option("--out", eb_out)->required();
    extend_bent->add_option("--seed", eb_seed);
    extend_bent->add_option("--checkpoint", eb_checkpoint);

    // extend-input
    int ei_nstart = 0, ei_m = 0;
    std::string ei_out;
    u64 ei_seed = 0;
    auto* extend_input =
        app.add_subcommand("extend-input", "classify by lifting the input dimension");
    extend_input->add_option("--n-start", ei_nstart)->required();
    extend_input->add_option("--m", ei_m)->required();
    extend_input->add_option("--attempts", cfg.attempts)->required();
    extend_input->add_option("--out", ei_out)->required();
    extend_input->add_option("--seed", ei_seed);

    // invariants
    std::string inv_in, inv_which;
    auto* invariants = app.add_subcommand("invariants", "print invariants per function");
    invariants->add_option("--in", inv_in)->required();
    invariants->add_option("--which", inv_which, "comma list of od,j2,profile")->required();

    // verify
    std::string ver_in;
    auto* verify = app.add_subcommand("verify", "run all APN tests, fail on disagreement");
    verify->add_option("--in", ver_in)->required();

    // dedup
    std::string dd_in, dd_db;
    auto* dedup = app.add_subcommand("dedup", "fold functions into a class database");
    dedup->add_option("--in", dd_in)->required();
    dedup->add_option("--db", dd_db)->required();

    // estimate
    auto* estimate = app.add_subcommand("estimate", "class-count estimators");
    estimate->require_subcommand(1);
    u64 est_t = 0, est_l = 0, est_tp = 0, est_m = 0;
    auto* mle = estimate->add_subcommand("mle", "inverse coupon-collector estimate");
    mle->add_option("--t", est_t)->required();
    mle->add_option("--l", est_l)->required();
    auto* overlap = estimate->add_subcommand("overlap", "known-set overlap estimate");
    overlap->add_option("--t", est_t)->required();
    overlap->add_option("--tprime", est_tp)->required();
    overlap->add_option("--M", est_m)->required();

    // find-bent-subspace
    std::string fb_in;
    int fb_dim = 0;
    auto* find_bent = app.add_subcommand("find-bent-subspace",
                                         "search component spaces for bent subspaces");
    find_bent->add_option("--in", fb_in)->required();
    find_bent->add_option("--dim", fb_dim)->required();

    // shared tuning flags
    for (auto* sub : {gen_bent, extend_bent, extend_input}) {
        sub->add_option("--workers", cfg.workers);
        sub->add_option("--max-results", [&cfg](const std::vector<std::string>& v) {
            cfg.max_results = std::stoull(v[0]);
            return true;
        });
        sub->add_option("--time-limit-ms", [&cfg](const std::vector<std::string>& v) {
            cfg.time_limit = std::chrono::milliseconds(std::stoull(v[0]));
            return true;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (!config_path.empty()) {
            // flags win over config-file values
            Config file_cfg = cfg;
            load_config_file(config_path, file_cfg);
            bool workers_flag = gen_bent->count("--workers") ||
                                extend_bent->count("--workers") ||
                                extend_input->count("--workers");
            if (!workers_flag) cfg.workers = file_cfg.workers;
            if (!extend_input->count("--attempts")) cfg.attempts = file_cfg.attempts;
            if (!cfg.max_results) cfg.max_results = file_cfg.max_results;
            if (!cfg.time_limit) cfg.time_limit = file_cfg.time_limit;
            cfg.b6_predicate = file_cfg.b6_predicate;
        }

        if (*gen_bent) return cmd_gen_bent(gb_n, gb_m, gb_out, cfg);
        if (*extend_bent)
            return cmd_extend_bent(eb_seeds, eb_profile, eb_out, eb_seed, eb_checkpoint, cfg);
        if (*extend_input) return cmd_extend_input(ei_nstart, ei_m, ei_out, ei_seed, cfg);
        if (*invariants) return cmd_invariants(inv_in, inv_which);
        if (*verify) return cmd_verify(ver_in);
        if (*dedup) return cmd_dedup(dd_in, dd_db);
        if (*mle) {
            std::cout << mle_class_count({est_t, est_l}) << '\n';
            return kExitOk;
        }
        if (*overlap) {
            OverlapEstimate est = overlap_class_count({est_t, 0, est_tp, est_m});
            std::cout << est.nearest << " (" << est.numerator << '/' << est.denominator
                      << ")\n";
            return kExitOk;
        }
        if (*find_bent) return cmd_find_bent_subspace(fb_in, fb_dim);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
