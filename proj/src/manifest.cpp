// SPDX-License-Identifier: Apache-2.0
#include "gfa/manifest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gfa {

namespace {

using nlohmann::json;

double finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw data_error(std::string("manifest: non-finite ") + what);
    return v;
}

json vec3_json(const Vec3& v, const char* what) {
    return json::array({finite(v.x(), what), finite(v.y(), what), finite(v.z(), what)});
}

Vec3 vec3_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw parse_error(std::string("manifest: ") + what + " must be a 3-array");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json pose_json(const RigidTransform& t) {
    Eigen::Quaterniond q(t.rotation);
    q.normalize();
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    return json{
        {"position", vec3_json(t.translation, "pose position")},
        {"quaternion", json::array({finite(q.x(), "quaternion"), finite(q.y(), "quaternion"),
                                    finite(q.z(), "quaternion"), finite(q.w(), "quaternion")})}};
}

RigidTransform pose_from(const json& j) {
    RigidTransform t;
    t.translation = vec3_from(j.at("position"), "pose position");
    const auto& qj = j.at("quaternion");
    if (!qj.is_array() || qj.size() != 4)
        throw parse_error("manifest: quaternion must be a 4-array [x,y,z,w]");
    Eigen::Quaterniond q(qj[3].get<double>(), qj[0].get<double>(),
                         qj[1].get<double>(), qj[2].get<double>());
    t.rotation = q.normalized().toRotationMatrix();
    return t;
}

} // namespace

Manifest build_manifest(const AssembledObject& assembled,
                        const std::vector<FeatureRecord>& records,
                        const GripperSpec& spec) {
    Manifest m;
    m.gripper = spec;
    m.spacing = assembled.spacing;
    m.panel_offset = assembled.panel_offset;
    m.features.reserve(assembled.placements.size());
    for (const auto& pl : assembled.placements) {
        const auto& rec = records[pl.record_id];
        ManifestFeature f;
        f.id = pl.record_id;
        f.source_object = rec.exemplar.source_object;
        f.grasp_pose = rec.exemplar.pose.frame;
        f.plane = pl.plane;
        f.score = pl.score;
        f.placement = pl.translation;
        f.point_count = pl.point_count;
        m.features.push_back(std::move(f));
    }
    return m;
}

std::string write_manifest(const Manifest& manifest) {
    json j;
    j["gripper"] = {{"width", finite(manifest.gripper.width, "gripper width")},
                    {"height", finite(manifest.gripper.height, "gripper height")},
                    {"depth", finite(manifest.gripper.depth, "gripper depth")},
                    {"resolution", finite(manifest.gripper.resolution, "resolution")}};
    j["spacing"] = finite(manifest.spacing, "spacing");
    j["panel_offset"] = finite(manifest.panel_offset, "panel offset");
    j["features"] = json::array();
    for (const auto& f : manifest.features) {
        j["features"].push_back(
            {{"id", f.id},
             {"source_object", f.source_object},
             {"grasp_pose", pose_json(f.grasp_pose)},
             {"plane", std::string(plane_name(f.plane))},
             {"score", finite(f.score, "score")},
             {"placement", vec3_json(f.placement, "placement")},
             {"point_count", f.point_count}});
    }
    return j.dump(2) + "\n";
}

Manifest parse_manifest(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("manifest: ") + e.what());
    }
    try {
        Manifest m;
        const auto& g = j.at("gripper");
        m.gripper.width = g.at("width").get<double>();
        m.gripper.height = g.at("height").get<double>();
        m.gripper.depth = g.at("depth").get<double>();
        m.gripper.resolution = g.at("resolution").get<double>();
        m.spacing = j.at("spacing").get<double>();
        m.panel_offset = j.at("panel_offset").get<double>();
        for (const auto& fj : j.at("features")) {
            ManifestFeature f;
            f.id = fj.at("id").get<std::size_t>();
            f.source_object = fj.at("source_object").get<std::string>();
            f.grasp_pose = pose_from(fj.at("grasp_pose"));
            f.plane = plane_from_name(fj.at("plane").get<std::string>());
            f.score = fj.at("score").get<double>();
            f.placement = vec3_from(fj.at("placement"), "placement");
            f.point_count = fj.at("point_count").get<std::size_t>();
            m.features.push_back(std::move(f));
        }
        return m;
    } catch (const json::exception& e) {
        throw parse_error(std::string("manifest: ") + e.what());
    }
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str());
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write '" + path.string() + "'");
    out << write_manifest(manifest);
    if (!out) throw data_error("write failed for '" + path.string() + "'");
}

} // namespace gfa
