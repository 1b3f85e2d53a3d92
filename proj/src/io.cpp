// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/io.hpp"

#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "lcs/error.hpp"

namespace lcs::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed ") + what + ": " + e.what());
    }
}

// Runs a JSON accessor block, turning type and key errors into lcs::Error.
template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(std::string("malformed ") + what + ": " + e.what());
    }
}

json vec_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

Eigen::VectorXd json_vec(const json& j) {
    require(j.is_array(), "expected a numeric array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

Vec3 json_vec3(const json& j) {
    const Eigen::VectorXd v = json_vec(j);
    require(v.size() == 3, "expected a 3-vector");
    return v;
}

std::uint32_t load_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void store_le32(std::uint32_t v, std::uint8_t* p) {
    for (int k = 0; k < 4; ++k)
        p[k] = static_cast<std::uint8_t>(v >> (8 * k));
}

// Minimal P5 reader: header tokens may be separated by any whitespace and
// '#' comments; one whitespace byte precedes the raster.
PatchMask parse_pgm(const Bytes& bytes) {
    std::size_t pos = 2;
    auto next_token = [&]() -> std::size_t {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else if (std::isspace(bytes[pos])) {
                ++pos;
            } else {
                break;
            }
        }
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            require(digits < 9, "PGM header value too large");
            value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
            ++pos;
            ++digits;
        }
        require(digits > 0, "malformed PGM header");
        return value;
    };
    const std::size_t width = next_token();
    const std::size_t height = next_token();
    const std::size_t maxval = next_token();
    require(width > 0 && height > 0, "PGM dimensions must be positive");
    require(maxval >= 1 && maxval <= 65535, "PGM maxval out of range");
    require(pos < bytes.size() && std::isspace(bytes[pos]), "malformed PGM header");
    ++pos;

    const std::size_t depth = maxval < 256 ? 1 : 2;
    const std::size_t total = width * height;
    require(bytes.size() - pos == total * depth, "PGM raster size does not match header");
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < total; ++i) {
        const std::uint8_t* px = &bytes[pos + i * depth];
        const bool on = depth == 1 ? px[0] != 0 : (px[0] | px[1]) != 0;
        if (on)
            selected.push_back(i);
    }
    return PatchMask(total, std::move(selected));
}

}  // namespace

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_text(const fs::path& path) {
    const Bytes b = read_file(path);
    return std::string(b.begin(), b.end());
}

void write_file_atomic(const fs::path& path, const Bytes& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), "cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        require(static_cast<bool>(out), "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot replace " + path.string());
    }
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    write_file_atomic(path, Bytes(text.begin(), text.end()));
}

Bytes encode_latent(const LatentTensor& z) {
    const json header = {{"dims", {z.patches(), z.dim()}}, {"dtype", "f32le"}};
    const std::string head = header.dump() + "\n";
    Bytes out(head.begin(), head.end());
    const std::size_t offset = out.size();
    out.resize(offset + 4 * static_cast<std::size_t>(z.patches() * z.dim()));
    std::uint8_t* p = out.data() + offset;
    for (Eigen::Index i = 0; i < z.patches(); ++i) {
        for (Eigen::Index j = 0; j < z.dim(); ++j) {
            store_le32(std::bit_cast<std::uint32_t>(static_cast<float>(z.data()(i, j))), p);
            p += 4;
        }
    }
    return out;
}

LatentTensor decode_latent(const Bytes& bytes) {
    const auto newline = std::find(bytes.begin(), bytes.end(), std::uint8_t{'\n'});
    require(newline != bytes.end(), "malformed latent header: no newline");
    const json header = parse_json(std::string(bytes.begin(), newline), "latent header");
    const auto [rows, cols] = guarded("latent header", [&] {
        require(header.at("dtype").get<std::string>() == "f32le", "unsupported latent dtype");
        const json& dims = header.at("dims");
        require(dims.is_array() && dims.size() == 2, "latent dims must have two entries");
        return std::pair{dims[0].get<std::int64_t>(), dims[1].get<std::int64_t>()};
    });
    require(rows >= 1 && cols >= 1 && rows <= (1 << 24) && cols <= (1 << 24), "latent dims out of range");

    const auto payload = static_cast<std::size_t>(bytes.end() - newline - 1);
    require(payload == 4 * static_cast<std::size_t>(rows * cols), "latent payload size does not match header");
    RowMatrix data(rows, cols);
    const std::uint8_t* p = &*newline + 1;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            data(i, j) = static_cast<double>(std::bit_cast<float>(load_le32(p)));
            p += 4;
        }
    }
    return LatentTensor(std::move(data));
}

void save_latent(const fs::path& path, const LatentTensor& z) { write_file_atomic(path, encode_latent(z)); }

LatentTensor load_latent(const fs::path& path) { return decode_latent(read_file(path)); }

std::string model_to_json(const SubspaceModel& m) {
    json basis = json::array();
    for (int c = 0; c < 3; ++c)
        basis.push_back(vec_json(m.basis().col(c)));
    const json out = {{"mean", vec_json(m.mean())}, {"basis", basis}, {"explained", m.explained()}};
    return out.dump(2) + "\n";
}

SubspaceModel model_from_json(const std::string& text) {
    const json j = parse_json(text, "model");
    return guarded("model", [&] {
        Eigen::VectorXd mean = json_vec(j.at("mean"));
        const json& cols = j.at("basis");
        require(cols.is_array() && cols.size() == 3, "model basis must have three columns");
        Basis3 basis(mean.size(), 3);
        for (int c = 0; c < 3; ++c) {
            const Eigen::VectorXd col = json_vec(cols[static_cast<std::size_t>(c)]);
            require(col.size() == mean.size(), "basis column length does not match mean");
            basis.col(c) = col;
        }
        const auto explained = j.at("explained").get<std::array<double, 3>>();
        return SubspaceModel(std::move(mean), std::move(basis), explained);
    });
}

std::string anchors_to_json(const AnchorSet& anchors) {
    json list = json::array();
    for (const HueAnchor& a : anchors.hue_anchors())
        list.push_back({{"label", to_string(a.label)}, {"hue", label_hue(a.label)}, {"point", vec_json(a.point)}});
    const json out = {{"anchors", list}, {"black", vec_json(anchors.black())}, {"white", vec_json(anchors.white())}};
    return out.dump(2) + "\n";
}

AnchorSet anchors_from_json(const std::string& text) {
    const json j = parse_json(text, "anchors");
    return guarded("anchors", [&] {
        const json& list = j.at("anchors");
        require(list.is_array() && list.size() == 6, "anchor file needs six hue anchors");
        std::array<HueAnchor, 6> hue_anchors;
        for (std::size_t k = 0; k < 6; ++k) {
            const std::string name = list[k].at("label").get<std::string>();
            const auto label = parse_anchor_label(name);
            require(label.has_value(), "unknown anchor label: " + name);
            hue_anchors[k] = {*label, json_vec3(list[k].at("point"))};
        }
        return AnchorSet(hue_anchors, json_vec3(j.at("black")), json_vec3(j.at("white")));
    });
}

std::string stats_to_json(const StatsTable& stats) {
    json out = json::array();
    for (const TimestepStats& r : stats.rows())
        out.push_back({{"t", r.t}, {"alpha", vec_json(r.alpha)}, {"beta", vec_json(r.beta)}});
    return out.dump() + "\n";
}

StatsTable stats_from_json(const std::string& text) {
    const json j = parse_json(text, "stats table");
    return guarded("stats table", [&] {
        require(j.is_array(), "stats table must be a JSON array");
        std::vector<TimestepStats> rows;
        for (const json& r : j)
            rows.push_back({r.at("t").get<int>(), json_vec3(r.at("alpha")), json_vec3(r.at("beta"))});
        return StatsTable(std::move(rows));
    });
}

std::string grid_to_json(const ColorGrid& grid) {
    json cells = json::array();
    for (const HslColor& c : grid.cells())
        cells.push_back({c.h, c.s, c.l});
    const json out = {{"height", grid.height()}, {"width", grid.width()}, {"cells", cells}};
    return out.dump() + "\n";
}

ColorGrid grid_from_json(const std::string& text) {
    const json j = parse_json(text, "color grid");
    return guarded("color grid", [&] {
        std::vector<HslColor> cells;
        for (const json& c : j.at("cells")) {
            require(c.is_array() && c.size() == 3, "grid cells must be [h, s, l]");
            cells.emplace_back(c[0].get<double>(), c[1].get<double>(), c[2].get<double>());
        }
        return ColorGrid(j.at("height").get<std::size_t>(), j.at("width").get<std::size_t>(), std::move(cells));
    });
}

PatchMask parse_mask(const Bytes& bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return parse_pgm(bytes);
    const json j = parse_json(std::string(bytes.begin(), bytes.end()), "mask");
    return guarded("mask", [&] {
        return PatchMask(j.at("L").get<std::size_t>(), j.at("selected").get<std::vector<std::size_t>>());
    });
}

PatchMask load_mask(const fs::path& path) { return parse_mask(read_file(path)); }

std::string manifest_to_json(const TrajectoryManifest& manifest) {
    json list = json::array();
    for (const TrajectoryRecord& r : manifest.trajectories)
        list.push_back({{"name", r.name}, {"timesteps", r.timesteps}, {"files", r.files}});
    const json out = {{"T", manifest.total_steps},
                      {"grid", {manifest.height, manifest.width}},
                      {"trajectories", list}};
    return out.dump(2) + "\n";
}

TrajectoryManifest manifest_from_json(const std::string& text) {
    const json j = parse_json(text, "trajectory manifest");
    return guarded("trajectory manifest", [&] {
        TrajectoryManifest m;
        m.total_steps = j.at("T").get<int>();
        const auto grid = j.at("grid").get<std::array<std::size_t, 2>>();
        m.height = grid[0];
        m.width = grid[1];
        for (const json& r : j.at("trajectories")) {
            TrajectoryRecord rec{r.at("name").get<std::string>(), r.at("timesteps").get<std::vector<int>>(),
                                 r.at("files").get<std::vector<std::string>>()};
            require(rec.timesteps.size() == rec.files.size(), "trajectory timesteps and files differ in length");
            m.trajectories.push_back(std::move(rec));
        }
        require(m.total_steps >= 1, "manifest T must be at least 1");
        return m;
    });
}

}  // namespace lcs::io
