// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfa/manifest.hpp"

namespace gfa {

struct PipelineConfig {
    std::vector<std::string> objects; // OBJ files, or directories of them
    GripperSpec gripper;
    std::size_t samples_per_object = 1000;
    std::size_t grasps_per_object = 64;
    std::size_t k_neighbors = 10;
    std::size_t min_points = 1;
    std::size_t workers = 1;
    std::uint64_t seed = 1;
    double spacing = 0.12;
    std::string out_dir = "out";
    std::string extraction_mode = "static"; // reserved; only "static" exists
    bool dump_regions = false;

    void validate() const;
    static PipelineConfig from_json_text(const std::string& text);
    static PipelineConfig from_json_file(const std::filesystem::path& path);
};

struct StageTimes {
    double load_ms = 0.0;
    double sample_ms = 0.0;
    double normals_ms = 0.0;
    double candidates_ms = 0.0;
    double extract_ms = 0.0;
    double dedup_ms = 0.0;
    double classify_ms = 0.0;
    double assemble_ms = 0.0;
    double write_ms = 0.0;
};

struct StatsReport {
    StageTimes stages;
    std::size_t objects = 0;
    std::size_t candidates = 0;
    std::size_t skipped_candidates = 0;
    std::size_t regions_empty = 0;
    std::size_t regions_below_min = 0;
    std::size_t regions_kept = 0; // grids before dedup
    std::size_t grids_unique = 0;
    std::optional<double> dedup_ratio;        // unique/total
    std::optional<double> compression_factor; // total/unique
    std::uint64_t naive_bytes = 0;            // all-regions grid set on disk
    std::uint64_t unique_bytes = 0;           // deduped grid set on disk
    std::array<std::size_t, 3> per_plane{};   // UV, UT, VT feature counts
    std::vector<std::string> warnings;
    std::string backend;

    std::string to_json_text() const;
    static StatsReport from_json_text(const std::string& text);
};

std::string report_stats_text(const StatsReport& report);

struct PipelineResult {
    StatsReport stats;
    std::filesystem::path regions_gfa;
    std::filesystem::path features_gfa;
    std::filesystem::path composite_ply;
    std::filesystem::path manifest_json;
    std::filesystem::path stats_json;
};

// Full pipeline: sample -> extract -> dedup -> classify -> assemble.
// All artifacts are byte-identical across runs and worker counts for a
// fixed config.
PipelineResult run_pipeline(const PipelineConfig& config);

// Staged variants that communicate through the documented file formats.
std::filesystem::path stage_extract(const PipelineConfig& config);
std::filesystem::path stage_dedup(const std::filesystem::path& regions_gfa,
                                  const std::filesystem::path& out_dir);
void stage_assemble(const PipelineConfig& config,
                    const std::filesystem::path& features_gfa);

enum class CorpusFamily { boxes, cylinders, mixed };
CorpusFamily corpus_family_from_name(std::string_view name);

// K distinct parametric shapes, each saved M times with byte-identical
// geometry under distinct names. Deterministic in the seed.
std::vector<std::filesystem::path> gen_synthetic_corpus(
    CorpusFamily family, std::size_t unique_count, std::size_t copies,
    std::uint64_t seed, const std::filesystem::path& out_dir);

} // namespace gfa
