// SPDX-License-Identifier: Apache-2.0
#include "gfa/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <unordered_map>

#include <json.hpp>

#include "gfa/grid_set.hpp"
#include "gfa/kernels.hpp"
#include "gfa/numtext.hpp"
#include "gfa/obj_io.hpp"
#include "gfa/parallel.hpp"
#include "gfa/ply_io.hpp"
#include "gfa/rng.hpp"
#include "gfa/sampling.hpp"

namespace gfa {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class StageTimer {
public:
    explicit StageTimer(double& sink_ms)
        : sink_(sink_ms), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const auto end = std::chrono::steady_clock::now();
        sink_ += std::chrono::duration<double, std::milli>(end - start_).count();
    }
    StageTimer(const StageTimer&) = delete;
    StageTimer& operator=(const StageTimer&) = delete;

private:
    double& sink_;
    std::chrono::steady_clock::time_point start_;
};

std::uint64_t geometry_digest(const Mesh& mesh) {
    Fnv1a64 h;
    h.update_u64(mesh.vertices.size());
    for (const auto& v : mesh.vertices)
        for (int i = 0; i < 3; ++i) {
            std::uint64_t bits;
            const double d = v[i];
            static_assert(sizeof(bits) == sizeof(d));
            std::memcpy(&bits, &d, sizeof(bits));
            h.update_u64(bits);
        }
    h.update_u64(mesh.triangles.size());
    for (const auto& t : mesh.triangles)
        for (int i = 0; i < 3; ++i) h.update_u64(t[i]);
    return h.digest();
}

std::string seed_to_hex(std::uint64_t seed) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx",
                  static_cast<unsigned long long>(seed));
    return buf;
}

std::uint64_t seed_from_hex(const std::string& text) {
    if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
        throw parse_error("bad seed string '" + text + "'");
    std::uint64_t out = 0;
    const auto res = std::from_chars(text.data() + 2, text.data() + text.size(), out, 16);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw parse_error("bad seed string '" + text + "'");
    return out;
}

json pose_to_meta(const RigidTransform& t) {
    Eigen::Quaterniond q(t.rotation);
    q.normalize();
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    json rot = json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rot.push_back(t.rotation(r, c));
    return json{{"position", {t.translation.x(), t.translation.y(), t.translation.z()}},
                {"quaternion", {q.x(), q.y(), q.z(), q.w()}},
                {"rotation", std::move(rot)}};
}

RigidTransform pose_from_meta(const json& j) {
    RigidTransform t;
    const auto& pos = j.at("position");
    t.translation = Vec3(pos.at(0).get<double>(), pos.at(1).get<double>(),
                         pos.at(2).get<double>());
    if (j.contains("rotation")) {
        // Exact: nine raw matrix entries survive the JSON round trip bit for
        // bit, unlike a quaternion-matrix-quaternion chain.
        const auto& rot = j.at("rotation");
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                t.rotation(r, c) = rot.at(3 * r + c).get<double>();
    } else {
        const auto& qj = j.at("quaternion");
        Eigen::Quaterniond q(qj.at(3).get<double>(), qj.at(0).get<double>(),
                             qj.at(1).get<double>(), qj.at(2).get<double>());
        t.rotation = q.normalized().toRotationMatrix();
    }
    if (!t.is_valid(1e-6)) throw data_error("metadata pose is not a rigid motion");
    return t;
}

std::string region_metadata(const std::string& source_object, const RigidTransform& pose,
                            std::uint64_t occupied, std::size_t candidate_index,
                            std::uint64_t sample_seed, std::size_t samples) {
    json j{{"source_object", source_object},
           {"pose", pose_to_meta(pose)},
           {"occupied_count", occupied},
           {"candidate_index", candidate_index},
           {"sample_seed", seed_to_hex(sample_seed)},
           {"samples", samples}};
    return j.dump();
}

std::string feature_metadata(const std::string& source_object, const RigidTransform& pose,
                             std::uint64_t occupied, std::size_t source_count,
                             std::uint64_t sample_seed, std::size_t samples) {
    json j{{"source_object", source_object},
           {"pose", pose_to_meta(pose)},
           {"occupied_count", occupied},
           {"source_count", source_count},
           {"sample_seed", seed_to_hex(sample_seed)},
           {"samples", samples}};
    return j.dump();
}

json parse_metadata(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("grid-set metadata: ") + e.what());
    }
}

std::vector<std::string> resolve_objects(const std::vector<std::string>& entries) {
    std::vector<std::string> out;
    for (const auto& entry : entries) {
        const fs::path p(entry);
        if (fs::is_directory(p)) {
            std::vector<std::string> dir_files;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".obj")
                    dir_files.push_back(e.path().string());
            if (dir_files.empty())
                throw data_error("no .obj files in directory '" + entry + "'");
            std::sort(dir_files.begin(), dir_files.end());
            out.insert(out.end(), dir_files.begin(), dir_files.end());
        } else if (fs::is_regular_file(p)) {
            out.push_back(entry);
        } else {
            throw data_error("object path '" + entry + "' does not exist");
        }
    }
    return out;
}

// Derived per-object seeds are keyed on geometry content, not on file name or
// corpus position: byte-identical objects always get byte-identical grasp
// candidates, which is what makes duplicate objects dedup to nothing.
struct ObjectSeeds {
    std::uint64_t sample = 0;
    std::uint64_t candidates = 0;
};

ObjectSeeds derive_seeds(std::uint64_t config_seed, std::uint64_t digest) {
    const std::uint64_t base = SplitMix64::hash(config_seed, digest);
    return ObjectSeeds{SplitMix64::hash(base, 0), SplitMix64::hash(base, 1)};
}

struct ObjectOutcome {
    std::vector<std::size_t> kept_candidates;     // candidate index per region
    std::vector<GripperFrameCloud> kept_regions;  // candidate order
    std::size_t candidates = 0;
    std::size_t skipped = 0;
    std::size_t empty = 0;
    std::size_t below_min = 0;
    std::uint64_t sample_seed = 0;
};

ObjectOutcome process_object(const std::string& path, const Mesh& mesh,
                             const PipelineConfig& config, StageTimes& times) {
    ObjectOutcome out;
    const ObjectSeeds seeds = derive_seeds(config.seed, geometry_digest(mesh));
    out.sample_seed = seeds.sample;

    PointCloud cloud;
    {
        StageTimer t(times.sample_ms);
        cloud = sample_surface_points(mesh, config.samples_per_object, seeds.sample);
    }
    {
        StageTimer t(times.normals_ms);
        estimate_normals(cloud, config.k_neighbors, config.workers);
    }
    CandidateSet cands;
    {
        StageTimer t(times.candidates_ms);
        cands = sample_grasp_candidates(cloud, config.grasps_per_object,
                                        config.gripper, seeds.candidates);
    }
    out.candidates = cands.poses.size();
    out.skipped = cands.skipped;

    std::vector<std::optional<GripperFrameCloud>> results(cands.poses.size());
    {
        StageTimer t(times.extract_ms);
        const CloudSoA soa = CloudSoA::from(cloud);
        parallel_for(cands.poses.size(), config.workers,
                     [&](std::size_t lo, std::size_t hi) {
                         for (std::size_t i = lo; i < hi; ++i)
                             results[i] = extract_region(soa, cands.poses[i],
                                                         config.gripper, path);
                     });
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i]) {
            ++out.empty;
        } else if (results[i]->points.size() < config.min_points) {
            ++out.below_min;
        } else {
            out.kept_candidates.push_back(i);
            out.kept_regions.push_back(std::move(*results[i]));
        }
    }
    return out;
}

void finish_counts(StatsReport& stats) {
    if (stats.regions_kept > 0) {
        stats.dedup_ratio = static_cast<double>(stats.grids_unique) /
                            static_cast<double>(stats.regions_kept);
        stats.compression_factor = static_cast<double>(stats.regions_kept) /
                                   static_cast<double>(stats.grids_unique);
    } else {
        stats.warnings.push_back(
            "no intersections: no grasp candidate overlapped any object");
    }
    stats.backend = kernels::backend_name(kernels::active_backend());
}

} // namespace

void PipelineConfig::validate() const {
    if (objects.empty()) throw config_error("object list is empty");
    gripper.validate();
    if (samples_per_object < 1) throw config_error("samples_per_object must be >= 1");
    if (grasps_per_object < 1) throw config_error("grasps_per_object must be >= 1");
    if (k_neighbors < 3) throw config_error("k_neighbors must be >= 3");
    if (k_neighbors + 1 > samples_per_object)
        throw config_error("samples_per_object must exceed k_neighbors");
    if (min_points < 1) throw config_error("min_points must be >= 1");
    if (workers < 1) throw config_error("workers must be >= 1");
    if (spacing < min_spacing(gripper))
        throw config_error("spacing " + std::to_string(spacing) +
                           " below minimum " + std::to_string(min_spacing(gripper)));
    if (extraction_mode != "static")
        throw config_error("extraction_mode '" + extraction_mode +
                           "' is not available; only \"static\" exists");
    if (out_dir.empty()) throw config_error("out_dir must not be empty");
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    PipelineConfig c;
    try {
        static const std::vector<std::string> known{
            "objects", "gripper", "samples_per_object", "grasps_per_object",
            "k_neighbors", "min_points", "workers", "seed", "spacing",
            "out_dir", "extraction_mode"};
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw config_error("config: unknown key '" + key + "'");
        }
        if (j.contains("objects"))
            c.objects = j.at("objects").get<std::vector<std::string>>();
        if (j.contains("gripper")) {
            const auto& g = j.at("gripper");
            static const std::vector<std::string> gkeys{"width", "height", "depth",
                                                        "resolution"};
            for (const auto& [key, value] : g.items()) {
                (void)value;
                if (std::find(gkeys.begin(), gkeys.end(), key) == gkeys.end())
                    throw config_error("config: unknown gripper key '" + key + "'");
            }
            if (g.contains("width")) c.gripper.width = g.at("width").get<double>();
            if (g.contains("height")) c.gripper.height = g.at("height").get<double>();
            if (g.contains("depth")) c.gripper.depth = g.at("depth").get<double>();
            if (g.contains("resolution"))
                c.gripper.resolution = g.at("resolution").get<double>();
        }
        if (j.contains("samples_per_object"))
            c.samples_per_object = j.at("samples_per_object").get<std::size_t>();
        if (j.contains("grasps_per_object"))
            c.grasps_per_object = j.at("grasps_per_object").get<std::size_t>();
        if (j.contains("k_neighbors"))
            c.k_neighbors = j.at("k_neighbors").get<std::size_t>();
        if (j.contains("min_points")) c.min_points = j.at("min_points").get<std::size_t>();
        if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("spacing")) c.spacing = j.at("spacing").get<double>();
        if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("extraction_mode"))
            c.extraction_mode = j.at("extraction_mode").get<std::string>();
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    return c;
}

PipelineConfig PipelineConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::string StatsReport::to_json_text() const {
    json j;
    j["stages_ms"] = {{"load", stages.load_ms},
                      {"sample", stages.sample_ms},
                      {"normals", stages.normals_ms},
                      {"candidates", stages.candidates_ms},
                      {"extract", stages.extract_ms},
                      {"dedup", stages.dedup_ms},
                      {"classify", stages.classify_ms},
                      {"assemble", stages.assemble_ms},
                      {"write", stages.write_ms}};
    j["objects"] = objects;
    j["candidates"] = candidates;
    j["skipped_candidates"] = skipped_candidates;
    j["regions_empty"] = regions_empty;
    j["regions_below_min"] = regions_below_min;
    j["regions_kept"] = regions_kept;
    j["grids_unique"] = grids_unique;
    if (dedup_ratio) j["dedup_ratio"] = *dedup_ratio;
    if (compression_factor) j["compression_factor"] = *compression_factor;
    j["naive_bytes"] = naive_bytes;
    j["unique_bytes"] = unique_bytes;
    j["per_plane"] = {{"uv", per_plane[0]}, {"ut", per_plane[1]}, {"vt", per_plane[2]}};
    j["warnings"] = warnings;
    j["backend"] = backend;
    return j.dump(2) + "\n";
}

StatsReport StatsReport::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("stats: ") + e.what());
    }
    StatsReport r;
    try {
        const auto& s = j.at("stages_ms");
        r.stages.load_ms = s.at("load").get<double>();
        r.stages.sample_ms = s.at("sample").get<double>();
        r.stages.normals_ms = s.at("normals").get<double>();
        r.stages.candidates_ms = s.at("candidates").get<double>();
        r.stages.extract_ms = s.at("extract").get<double>();
        r.stages.dedup_ms = s.at("dedup").get<double>();
        r.stages.classify_ms = s.at("classify").get<double>();
        r.stages.assemble_ms = s.at("assemble").get<double>();
        r.stages.write_ms = s.at("write").get<double>();
        r.objects = j.at("objects").get<std::size_t>();
        r.candidates = j.at("candidates").get<std::size_t>();
        r.skipped_candidates = j.at("skipped_candidates").get<std::size_t>();
        r.regions_empty = j.at("regions_empty").get<std::size_t>();
        r.regions_below_min = j.at("regions_below_min").get<std::size_t>();
        r.regions_kept = j.at("regions_kept").get<std::size_t>();
        r.grids_unique = j.at("grids_unique").get<std::size_t>();
        if (j.contains("dedup_ratio")) r.dedup_ratio = j.at("dedup_ratio").get<double>();
        if (j.contains("compression_factor"))
            r.compression_factor = j.at("compression_factor").get<double>();
        r.naive_bytes = j.at("naive_bytes").get<std::uint64_t>();
        r.unique_bytes = j.at("unique_bytes").get<std::uint64_t>();
        r.per_plane[0] = j.at("per_plane").at("uv").get<std::size_t>();
        r.per_plane[1] = j.at("per_plane").at("ut").get<std::size_t>();
        r.per_plane[2] = j.at("per_plane").at("vt").get<std::size_t>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.backend = j.at("backend").get<std::string>();
    } catch (const json::exception& e) {
        throw parse_error(std::string("stats: ") + e.what());
    }
    return r;
}

std::string report_stats_text(const StatsReport& r) {
    char buf[256];
    std::string out;
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof(buf), fmt, args...);
        out += buf;
        out += '\n';
    };
    line("objects:          %zu", r.objects);
    line("grasp candidates: %zu (skipped for degenerate normals: %zu)",
         r.candidates, r.skipped_candidates);
    line("regions:          kept %zu, empty %zu, below min_points %zu",
         r.regions_kept, r.regions_empty, r.regions_below_min);
    if (r.dedup_ratio && r.compression_factor) {
        line("dedup:            %zu -> %zu grids (ratio %.4f, compression factor %.2fx)",
             r.regions_kept, r.grids_unique, *r.dedup_ratio, *r.compression_factor);
    } else {
        line("dedup:            n/a");
    }
    const double naive_mib = static_cast<double>(r.naive_bytes) / (1024.0 * 1024.0);
    const double unique_mib = static_cast<double>(r.unique_bytes) / (1024.0 * 1024.0);
    if (r.unique_bytes > 0) {
        line("storage:          naive %llu bytes (%.2f MiB) -> unique %llu bytes (%.2f MiB), %.2fx",
             static_cast<unsigned long long>(r.naive_bytes), naive_mib,
             static_cast<unsigned long long>(r.unique_bytes), unique_mib,
             static_cast<double>(r.naive_bytes) / static_cast<double>(r.unique_bytes));
    } else {
        line("storage:          naive %llu bytes, unique %llu bytes",
             static_cast<unsigned long long>(r.naive_bytes),
             static_cast<unsigned long long>(r.unique_bytes));
    }
    line("plane classes:    uv %zu, ut %zu, vt %zu", r.per_plane[0], r.per_plane[1],
         r.per_plane[2]);
    line("stage times (ms): load %.1f | sample %.1f | normals %.1f | candidates %.1f | "
         "extract %.1f | dedup %.1f | classify %.1f | assemble %.1f | write %.1f",
         r.stages.load_ms, r.stages.sample_ms, r.stages.normals_ms,
         r.stages.candidates_ms, r.stages.extract_ms, r.stages.dedup_ms,
         r.stages.classify_ms, r.stages.assemble_ms, r.stages.write_ms);
    line("kernel backend:   %s", r.backend.c_str());
    for (const auto& w : r.warnings) line("warning:          %s", w.c_str());
    return out;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    config.validate();
    const std::vector<std::string> object_paths = resolve_objects(config.objects);

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    if (config.dump_regions) fs::create_directories(out_dir / "regions");

    PipelineResult result;
    StatsReport& stats = result.stats;
    stats.objects = object_paths.size();

    const GridDims dims = GridDims::from_spec(config.gripper);
    Deduper dd(dims);
    GridSet naive{dims, {}};
    std::unordered_map<std::string, std::pair<std::uint64_t, std::size_t>> object_sampling;

    for (std::size_t oi = 0; oi < object_paths.size(); ++oi) {
        const std::string& path = object_paths[oi];
        Mesh mesh;
        {
            StageTimer t(stats.stages.load_ms);
            mesh = load_obj(path);
            mesh.validate();
        }
        ObjectOutcome outcome = process_object(path, mesh, config, stats.stages);
        stats.candidates += outcome.candidates;
        stats.skipped_candidates += outcome.skipped;
        stats.regions_empty += outcome.empty;
        stats.regions_below_min += outcome.below_min;
        stats.regions_kept += outcome.kept_regions.size();
        object_sampling[path] = {outcome.sample_seed, config.samples_per_object};

        if (config.dump_regions) {
            StageTimer t(stats.stages.write_ms);
            for (std::size_t i = 0; i < outcome.kept_regions.size(); ++i) {
                char name[64];
                std::snprintf(name, sizeof(name), "obj%03zu_c%04zu.ply", oi,
                              outcome.kept_candidates[i]);
                PointCloud region_cloud;
                region_cloud.points = outcome.kept_regions[i].points;
                save_ply(region_cloud, out_dir / "regions" / name);
            }
        }

        {
            StageTimer t(stats.stages.dedup_ms);
            for (std::size_t i = 0; i < outcome.kept_regions.size(); ++i) {
                GripperFrameCloud& region = outcome.kept_regions[i];
                OccupancyGrid grid = voxelize(region, config.gripper);
                naive.records.push_back(GridSetRecord{
                    region_metadata(path, region.pose.frame, grid.occupied_count(),
                                    outcome.kept_candidates[i], outcome.sample_seed,
                                    config.samples_per_object),
                    grid});
                dd.insert(std::move(grid), std::move(region));
            }
        }
    }

    std::vector<FeatureRecord> records;
    {
        StageTimer t(stats.stages.dedup_ms);
        records = dd.finalize();
    }
    stats.grids_unique = records.size();

    std::vector<PlaneClassification> classes(records.size());
    {
        StageTimer t(stats.stages.classify_ms);
        parallel_for(records.size(), config.workers,
                     [&](std::size_t lo, std::size_t hi) {
                         for (std::size_t i = lo; i < hi; ++i)
                             classes[i] = classify_plane(records[i].grid);
                     });
    }
    for (const auto& cls : classes) ++stats.per_plane[static_cast<int>(cls.plane)];

    AssembledObject assembled;
    PointCloud composite;
    {
        StageTimer t(stats.stages.assemble_ms);
        assembled = layout(records, classes, config.gripper, config.spacing);
        composite = compose_cloud(assembled, records);
    }
    const Manifest manifest = build_manifest(assembled, records, config.gripper);

    result.regions_gfa = out_dir / "regions.gfa";
    result.features_gfa = out_dir / "features.gfa";
    result.composite_ply = out_dir / "composite.ply";
    result.manifest_json = out_dir / "manifest.json";
    result.stats_json = out_dir / "stats.json";
    {
        StageTimer t(stats.stages.write_ms);
        save_grid_set(naive, result.regions_gfa);

        GridSet unique{dims, {}};
        unique.records.reserve(records.size());
        for (const auto& rec : records) {
            const auto& sampling = object_sampling.at(rec.exemplar.source_object);
            unique.records.push_back(GridSetRecord{
                feature_metadata(rec.exemplar.source_object, rec.exemplar.pose.frame,
                                 rec.grid.occupied_count(), rec.sources.size(),
                                 sampling.first, sampling.second),
                rec.grid});
        }
        save_grid_set(unique, result.features_gfa);
        save_ply(composite, result.composite_ply);
        save_manifest(manifest, result.manifest_json);
    }
    stats.naive_bytes = fs::file_size(result.regions_gfa);
    stats.unique_bytes = fs::file_size(result.features_gfa);

    finish_counts(stats);
    {
        std::ofstream out(result.stats_json, std::ios::binary);
        if (!out) throw data_error("cannot write '" + result.stats_json.string() + "'");
        out << stats.to_json_text();
    }
    return result;
}

std::filesystem::path stage_extract(const PipelineConfig& config) {
    config.validate();
    const std::vector<std::string> object_paths = resolve_objects(config.objects);
    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    if (config.dump_regions) fs::create_directories(out_dir / "regions");

    StageTimes times;
    const GridDims dims = GridDims::from_spec(config.gripper);
    GridSet regions{dims, {}};
    for (std::size_t oi = 0; oi < object_paths.size(); ++oi) {
        const std::string& path = object_paths[oi];
        Mesh mesh = load_obj(path);
        mesh.validate();
        ObjectOutcome outcome = process_object(path, mesh, config, times);
        for (std::size_t i = 0; i < outcome.kept_regions.size(); ++i) {
            const GripperFrameCloud& region = outcome.kept_regions[i];
            OccupancyGrid grid = voxelize(region, config.gripper);
            regions.records.push_back(GridSetRecord{
                region_metadata(path, region.pose.frame, grid.occupied_count(),
                                outcome.kept_candidates[i], outcome.sample_seed,
                                config.samples_per_object),
                std::move(grid)});
            if (config.dump_regions) {
                char name[64];
                std::snprintf(name, sizeof(name), "obj%03zu_c%04zu.ply", oi,
                              outcome.kept_candidates[i]);
                PointCloud region_cloud;
                region_cloud.points = region.points;
                save_ply(region_cloud, out_dir / "regions" / name);
            }
        }
    }
    const fs::path out_path = out_dir / "regions.gfa";
    save_grid_set(regions, out_path);
    return out_path;
}

std::filesystem::path stage_dedup(const std::filesystem::path& regions_gfa,
                                  const std::filesystem::path& out_dir) {
    const GridSet regions = load_grid_set(regions_gfa);
    fs::create_directories(out_dir);

    Deduper dd(regions.dims);
    for (const auto& rec : regions.records) {
        const json meta = parse_metadata(rec.metadata);
        SourceRef src;
        src.object = meta.at("source_object").get<std::string>();
        src.pose.frame = pose_from_meta(meta.at("pose"));
        dd.insert(rec.grid, std::move(src));
    }
    const std::vector<FeatureRecord> records = dd.finalize();

    GridSet unique{regions.dims, {}};
    unique.records.reserve(records.size());
    for (const auto& rec : records) {
        // first_seen equals the input record index because insertion followed
        // file order; reuse the exemplar's sampling fields verbatim.
        const json meta = parse_metadata(regions.records[rec.first_seen].metadata);
        unique.records.push_back(GridSetRecord{
            feature_metadata(meta.at("source_object").get<std::string>(),
                             rec.exemplar.pose.frame, rec.grid.occupied_count(),
                             rec.sources.size(),
                             seed_from_hex(meta.at("sample_seed").get<std::string>()),
                             meta.at("samples").get<std::size_t>()),
            rec.grid});
    }
    const fs::path out_path = fs::path(out_dir) / "features.gfa";
    save_grid_set(unique, out_path);
    return out_path;
}

void stage_assemble(const PipelineConfig& config,
                    const std::filesystem::path& features_gfa) {
    config.gripper.validate();
    const GridSet unique = load_grid_set(features_gfa);
    if (!(unique.dims == GridDims::from_spec(config.gripper)))
        throw data_error("grid-set dimensions do not match the configured gripper");

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);

    // Re-derive each exemplar region from its source object at the recorded
    // pose; sampling is content-keyed so the stored seed reproduces the exact
    // cloud of the producing run.
    struct SampledObject {
        CloudSoA soa;
    };
    std::map<std::string, SampledObject> cache;

    std::vector<FeatureRecord> records;
    records.reserve(unique.records.size());
    for (std::size_t i = 0; i < unique.records.size(); ++i) {
        const json meta = parse_metadata(unique.records[i].metadata);
        const std::string source = meta.at("source_object").get<std::string>();
        const std::uint64_t sample_seed =
            seed_from_hex(meta.at("sample_seed").get<std::string>());
        const std::size_t samples = meta.at("samples").get<std::size_t>();

        auto it = cache.find(source);
        if (it == cache.end()) {
            Mesh mesh = load_obj(source);
            mesh.validate();
            const PointCloud cloud = sample_surface_points(mesh, samples, sample_seed);
            it = cache.emplace(source, SampledObject{CloudSoA::from(cloud)}).first;
        }

        GraspPose pose;
        pose.frame = pose_from_meta(meta.at("pose"));
        auto region = extract_region(it->second.soa, pose, config.gripper, source);
        if (!region)
            throw internal_error("assemble: stored pose extracts nothing from '" +
                                 source + "'; wrong objects or gripper spec?");
        OccupancyGrid grid = voxelize(*region, config.gripper);
        if (!grids_identical(grid, unique.records[i].grid))
            throw internal_error("assemble: re-extracted region does not reproduce "
                                 "record " + std::to_string(i) +
                                 "; wrong objects, seed, or gripper spec?");
        FeatureRecord rec;
        rec.grid = std::move(grid);
        rec.exemplar = std::move(*region);
        rec.exemplar.pose = pose;
        rec.sources.push_back(SourceRef{source, pose});
        rec.first_seen = i;
        records.push_back(std::move(rec));
    }

    std::vector<PlaneClassification> classes(records.size());
    parallel_for(records.size(), config.workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) classes[i] = classify_plane(records[i].grid);
    });

    const AssembledObject assembled = layout(records, classes, config.gripper, config.spacing);
    const PointCloud composite = compose_cloud(assembled, records);
    save_ply(composite, out_dir / "composite.ply");
    save_manifest(build_manifest(assembled, records, config.gripper),
                  out_dir / "manifest.json");
}

CorpusFamily corpus_family_from_name(std::string_view name) {
    if (name == "boxes") return CorpusFamily::boxes;
    if (name == "cylinders") return CorpusFamily::cylinders;
    if (name == "mixed") return CorpusFamily::mixed;
    throw config_error("unknown corpus family '" + std::string(name) + "'");
}

namespace {

Mesh make_box(double hx, double hy, double hz) {
    Mesh m;
    for (int i = 0; i < 8; ++i)
        m.vertices.emplace_back((i & 1) ? hx : -hx, (i & 2) ? hy : -hy,
                                (i & 4) ? hz : -hz);
    m.triangles = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6},
                   {0, 1, 5}, {0, 5, 4}, {2, 6, 7}, {2, 7, 3},
                   {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
    return m;
}

Mesh make_cylinder(double radius, double height, std::uint32_t sides) {
    Mesh m;
    const double hz = height / 2.0;
    for (std::uint32_t i = 0; i < sides; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(sides);
        m.vertices.emplace_back(radius * std::cos(angle), radius * std::sin(angle), -hz);
    }
    for (std::uint32_t i = 0; i < sides; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(sides);
        m.vertices.emplace_back(radius * std::cos(angle), radius * std::sin(angle), hz);
    }
    const std::uint32_t bottom_center = 2 * sides;
    const std::uint32_t top_center = 2 * sides + 1;
    m.vertices.emplace_back(0.0, 0.0, -hz);
    m.vertices.emplace_back(0.0, 0.0, hz);
    for (std::uint32_t i = 0; i < sides; ++i) {
        const std::uint32_t j = (i + 1) % sides;
        m.triangles.push_back({i, j, sides + j});
        m.triangles.push_back({i, sides + j, sides + i});
        m.triangles.push_back({bottom_center, j, i});
        m.triangles.push_back({top_center, sides + i, sides + j});
    }
    return m;
}

} // namespace

std::vector<std::filesystem::path> gen_synthetic_corpus(
    CorpusFamily family, std::size_t unique_count, std::size_t copies,
    std::uint64_t seed, const std::filesystem::path& out_dir) {
    if (unique_count < 1 || copies < 1)
        throw config_error("corpus needs unique_count >= 1 and copies >= 1");
    fs::create_directories(out_dir);

    Rng rng(seed);
    std::vector<fs::path> paths;
    paths.reserve(unique_count * copies);
    for (std::size_t k = 0; k < unique_count; ++k) {
        const bool box = family == CorpusFamily::boxes ||
                         (family == CorpusFamily::mixed && k % 2 == 0);
        Mesh mesh;
        const char* tag;
        if (box) {
            tag = "box";
            mesh = make_box(rng.uniform(0.015, 0.06), rng.uniform(0.015, 0.06),
                            rng.uniform(0.015, 0.06));
        } else {
            tag = "cyl";
            mesh = make_cylinder(rng.uniform(0.012, 0.05), rng.uniform(0.04, 0.12), 24);
        }
        const std::string text = write_obj(mesh);
        for (std::size_t m = 0; m < copies; ++m) {
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%03zu_%02zu.obj", tag, k, m);
            const fs::path path = out_dir / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) throw data_error("cannot write '" + path.string() + "'");
            out << text;
            paths.push_back(path);
        }
    }
    return paths;
}

} // namespace gfa
