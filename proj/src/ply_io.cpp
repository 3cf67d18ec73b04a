// SPDX-License-Identifier: Apache-2.0
#include "gfa/ply_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "gfa/numtext.hpp"

namespace gfa {

namespace {

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    bool next(std::string_view& line) {
        if (pos > text.size()) return false;
        if (pos == text.size()) {
            pos = text.size() + 1;
            return false;
        }
        const std::size_t nl = text.find('\n', pos);
        line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                             : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return true;
    }
};

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(std::string_view name, std::size_t line_no, const std::string& msg) {
    throw parse_error(std::string(name) + ":" + std::to_string(line_no) + ": " + msg);
}

} // namespace

PointCloud parse_ply_ascii(std::string_view text, std::string_view name) {
    LineReader rd{text};
    std::string_view line;

    if (!rd.next(line) || line != "ply") fail(name, rd.line_no, "missing 'ply' magic");
    if (!rd.next(line)) fail(name, rd.line_no, "truncated header");
    if (line != "format ascii 1.0") {
        if (line.substr(0, 13) == "format binary")
            fail(name, rd.line_no, "binary PLY is not supported, use ascii 1.0");
        fail(name, rd.line_no, "unsupported format line '" + std::string(line) + "'");
    }

    std::uint64_t vertex_count = 0;
    bool have_element = false;
    std::vector<std::string> props;
    while (true) {
        if (!rd.next(line)) fail(name, rd.line_no, "header missing end_header");
        const auto tokens = split_ws(line);
        if (tokens.empty()) fail(name, rd.line_no, "blank line in header");
        if (tokens[0] == "comment") continue;
        if (tokens[0] == "element") {
            if (have_element || tokens.size() != 3 || tokens[1] != "vertex" ||
                !parse_u64(tokens[2], vertex_count))
                fail(name, rd.line_no, "only a single 'element vertex N' is supported");
            have_element = true;
            continue;
        }
        if (tokens[0] == "property") {
            if (!have_element)
                fail(name, rd.line_no, "property before element");
            if (tokens.size() != 3 || (tokens[1] != "float" && tokens[1] != "double"))
                fail(name, rd.line_no, "unsupported property '" + std::string(line) + "'");
            props.emplace_back(tokens[2]);
            continue;
        }
        if (tokens[0] == "end_header") break;
        fail(name, rd.line_no, "unsupported header line '" + std::string(tokens[0]) + "'");
    }
    if (!have_element) fail(name, rd.line_no, "missing 'element vertex'");

    bool with_normals = false;
    const std::vector<std::string> xyz = {"x", "y", "z"};
    const std::vector<std::string> xyzn = {"x", "y", "z", "nx", "ny", "nz"};
    if (props == xyz) {
        with_normals = false;
    } else if (props == xyzn) {
        with_normals = true;
    } else {
        fail(name, rd.line_no, "properties must be x y z [nx ny nz]");
    }

    PointCloud cloud;
    cloud.points.reserve(vertex_count);
    if (with_normals) cloud.normals.reserve(vertex_count);
    const std::size_t want = with_normals ? 6u : 3u;
    for (std::uint64_t i = 0; i < vertex_count; ++i) {
        if (!rd.next(line))
            fail(name, rd.line_no, "body ends after " + std::to_string(i) +
                                       " of " + std::to_string(vertex_count) +
                                       " vertices");
        const auto tokens = split_ws(line);
        if (tokens.size() != want)
            fail(name, rd.line_no, "expected " + std::to_string(want) +
                                       " values per vertex");
        double v[6];
        for (std::size_t k = 0; k < want; ++k)
            if (!parse_double(tokens[k], v[k]))
                fail(name, rd.line_no, "bad number '" + std::string(tokens[k]) + "'");
        cloud.points.emplace_back(v[0], v[1], v[2]);
        if (with_normals) cloud.normals.emplace_back(v[3], v[4], v[5]);
    }
    while (rd.next(line)) {
        if (!split_ws(line).empty())
            fail(name, rd.line_no, "trailing data after declared vertex count");
    }

    cloud.validate();
    return cloud;
}

std::string write_ply_ascii(const PointCloud& cloud) {
    cloud.validate();
    std::string out;
    out.reserve(64 + cloud.points.size() * (cloud.has_normals() ? 72 : 40));
    out += "ply\nformat ascii 1.0\nelement vertex ";
    out += std::to_string(cloud.points.size());
    out += "\nproperty double x\nproperty double y\nproperty double z\n";
    if (cloud.has_normals())
        out += "property double nx\nproperty double ny\nproperty double nz\n";
    out += "end_header\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const Vec3& p = cloud.points[i];
        append_double(out, p.x());
        out += ' ';
        append_double(out, p.y());
        out += ' ';
        append_double(out, p.z());
        if (cloud.has_normals()) {
            const Vec3& nv = cloud.normals[i];
            out += ' ';
            append_double(out, nv.x());
            out += ' ';
            append_double(out, nv.y());
            out += ' ';
            append_double(out, nv.z());
        }
        out += '\n';
    }
    return out;
}

PointCloud load_ply(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ply_ascii(ss.str(), path.string());
}

void save_ply(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write '" + path.string() + "'");
    out << write_ply_ascii(cloud);
    if (!out) throw data_error("write failed for '" + path.string() + "'");
}

} // namespace gfa
