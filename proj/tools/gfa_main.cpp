// SPDX-License-Identifier: Apache-2.0
//
// gfa — compresses the grasp-relevant geometry of many objects into one
// composite object. Subcommands mirror the pipeline stages so intermediate
// artifacts can be produced and inspected independently.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gfa/pipeline.hpp"

namespace {

// Exit codes: 0 ok, 1 usage/config, 2 data/parse, 3 internal invariant.
int run_guarded(const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const gfa::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gfa::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const gfa::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::size_t workers = 0;
    bool have_seed = false;
    std::uint64_t seed = 0;
    bool dump_regions = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_dump = true) {
    cmd->add_option("--config", opts.config_path, "pipeline config (JSON)")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
    cmd->add_option("--workers", opts.workers, "worker threads (overrides config)");
    cmd->add_option("--seed", opts.seed, "RNG seed (overrides config)")
        ->each([&opts](const std::string&) { opts.have_seed = true; });
    if (with_dump)
        cmd->add_flag("--dump-regions", opts.dump_regions,
                      "write each kept region as a PLY file for debugging");
}

gfa::PipelineConfig load_config(const CommonOpts& opts) {
    gfa::PipelineConfig config = gfa::PipelineConfig::from_json_file(opts.config_path);
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (opts.workers > 0) config.workers = opts.workers;
    if (opts.have_seed) config.seed = opts.seed;
    config.dump_regions = opts.dump_regions;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gfa — grasp-region extraction, dedup and assembly pipeline"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    auto* run_cmd = app.add_subcommand(
        "run", "full pipeline: sample, extract, dedup, classify, assemble");
    add_common(run_cmd, run_opts);

    struct {
        std::string family = "mixed";
        std::size_t unique_count = 4;
        std::size_t copies = 2;
        std::uint64_t seed = 1;
        std::string out_dir;
    } corpus_opts;
    auto* corpus_cmd =
        app.add_subcommand("gen-corpus", "generate a synthetic OBJ test corpus");
    corpus_cmd->add_option("--family", corpus_opts.family, "boxes | cylinders | mixed");
    corpus_cmd->add_option("--unique", corpus_opts.unique_count,
                           "number of distinct shapes");
    corpus_cmd->add_option("--copies", corpus_opts.copies,
                           "byte-identical copies per shape");
    corpus_cmd->add_option("--seed", corpus_opts.seed, "RNG seed");
    corpus_cmd->add_option("--out", corpus_opts.out_dir, "output directory")->required();

    CommonOpts extract_opts;
    auto* extract_cmd = app.add_subcommand(
        "extract", "sample objects and write every kept region to regions.gfa");
    add_common(extract_cmd, extract_opts);

    struct {
        std::string in_path;
        std::string out_dir = "out";
    } dedup_opts;
    auto* dedup_cmd = app.add_subcommand(
        "dedup", "remove duplicate grids from a regions.gfa, write features.gfa");
    dedup_cmd->add_option("--in", dedup_opts.in_path, "input regions.gfa")->required();
    dedup_cmd->add_option("--out", dedup_opts.out_dir, "output directory");

    CommonOpts assemble_opts;
    std::string assemble_grids;
    auto* assemble_cmd = app.add_subcommand(
        "assemble", "classify features.gfa and build composite.ply + manifest.json");
    add_common(assemble_cmd, assemble_opts, false);
    assemble_cmd->add_option("--grids", assemble_grids, "input features.gfa")->required();

    struct {
        std::string in_path;
    } stats_opts;
    auto* stats_cmd =
        app.add_subcommand("stats", "pretty-print a stats.json report");
    stats_cmd->add_option("--in", stats_opts.in_path, "input stats.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run_cmd->parsed()) {
        return run_guarded([&] {
            const gfa::PipelineConfig config = load_config(run_opts);
            const gfa::PipelineResult result = gfa::run_pipeline(config);
            std::cout << gfa::report_stats_text(result.stats);
            std::cout << "wrote " << result.regions_gfa.string() << ", "
                      << result.features_gfa.string() << ", "
                      << result.composite_ply.string() << ", "
                      << result.manifest_json.string() << ", "
                      << result.stats_json.string() << "\n";
        });
    }
    if (corpus_cmd->parsed()) {
        return run_guarded([&] {
            const auto paths = gfa::gen_synthetic_corpus(
                gfa::corpus_family_from_name(corpus_opts.family),
                corpus_opts.unique_count, corpus_opts.copies, corpus_opts.seed,
                corpus_opts.out_dir);
            std::cout << "wrote " << paths.size() << " objects to "
                      << corpus_opts.out_dir << "\n";
        });
    }
    if (extract_cmd->parsed()) {
        return run_guarded([&] {
            const gfa::PipelineConfig config = load_config(extract_opts);
            const auto path = gfa::stage_extract(config);
            std::cout << "wrote " << path.string() << "\n";
        });
    }
    if (dedup_cmd->parsed()) {
        return run_guarded([&] {
            const auto path = gfa::stage_dedup(dedup_opts.in_path, dedup_opts.out_dir);
            std::cout << "wrote " << path.string() << "\n";
        });
    }
    if (assemble_cmd->parsed()) {
        return run_guarded([&] {
            const gfa::PipelineConfig config = load_config(assemble_opts);
            gfa::stage_assemble(config, assemble_grids);
            std::cout << "wrote " << (std::filesystem::path(config.out_dir) / "composite.ply").string()
                      << ", "
                      << (std::filesystem::path(config.out_dir) / "manifest.json").string()
                      << "\n";
        });
    }
    if (stats_cmd->parsed()) {
        return run_guarded([&] {
            std::ifstream in(stats_opts.in_path, std::ios::binary);
            if (!in) throw gfa::data_error("cannot open '" + stats_opts.in_path + "'");
            std::ostringstream ss;
            ss << in.rdbuf();
            std::cout << gfa::report_stats_text(
                gfa::StatsReport::from_json_text(ss.str()));
        });
    }
    return 1;
}
