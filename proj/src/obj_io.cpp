// SPDX-License-Identifier: Apache-2.0
#include "gfa/obj_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "gfa/numtext.hpp"

namespace gfa {

namespace {

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

Mesh parse_obj(std::string_view text, std::string_view name) {
    Mesh mesh;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                     ? text.size() - pos
                                                     : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;

        if (tokens[0] == "v") {
            if (tokens.size() != 4)
                fail(name, line_no, "expected 3 coordinates after 'v'");
            double c[3];
            for (int k = 0; k < 3; ++k)
                if (!parse_double(tokens[k + 1], c[k]))
                    fail(name, line_no, "bad coordinate '" + std::string(tokens[k + 1]) + "'");
            mesh.vertices.emplace_back(c[0], c[1], c[2]);
        } else if (tokens[0] == "f") {
            if (tokens.size() < 4)
                fail(name, line_no, "face needs at least 3 vertices");
            std::vector<std::uint32_t> idx;
            idx.reserve(tokens.size() - 1);
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                std::string_view tok = tokens[k];
                const std::size_t slash = tok.find('/');
                if (slash != std::string_view::npos) tok = tok.substr(0, slash);
                std::uint64_t v = 0;
                if (!parse_u64(tok, v) || v == 0)
                    fail(name, line_no, "bad face index '" + std::string(tokens[k]) + "'");
                if (v > mesh.vertices.size())
                    fail(name, line_no, "face index " + std::to_string(v) +
                                            " out of range (have " +
                                            std::to_string(mesh.vertices.size()) +
                                            " vertices)");
                idx.push_back(static_cast<std::uint32_t>(v - 1));
            }
            for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
                const std::uint32_t a = idx[0], b = idx[k], c = idx[k + 1];
                if (a == b || b == c || a == c)
                    fail(name, line_no, "degenerate triangle");
                mesh.triangles.push_back({a, b, c});
            }
        } else {
            fail(name, line_no, "unsupported line '" + std::string(tokens[0]) + "'");
        }
    }
    return mesh;
}

std::string write_obj(const Mesh& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 32 + mesh.triangles.size() * 16);
    for (const auto& v : mesh.vertices) {
        out += "v ";
        append_double(out, v.x());
        out += ' ';
        append_double(out, v.y());
        out += ' ';
        append_double(out, v.z());
        out += '\n';
    }
    for (const auto& t : mesh.triangles) {
        out += "f ";
        out += std::to_string(t[0] + 1);
        out += ' ';
        out += std::to_string(t[1] + 1);
        out += ' ';
        out += std::to_string(t[2] + 1);
        out += '\n';
    }
    return out;
}

Mesh load_obj(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_obj(ss.str(), path.string());
}

void save_obj(const Mesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write '" + path.string() + "'");
    out << write_obj(mesh);
    if (!out) throw data_error("write failed for '" + path.string() + "'");
}

} // namespace gfa
