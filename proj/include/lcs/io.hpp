// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lcs/observe.hpp"

namespace lcs::io {

namespace fs = std::filesystem;

using Bytes = std::vector<std::uint8_t>;

/// Whole-file read; throws lcs::Error if the file cannot be opened.
Bytes read_file(const fs::path& path);
std::string read_text(const fs::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// reader never sees a partial file.
void write_file_atomic(const fs::path& path, const Bytes& bytes);
void write_text_atomic(const fs::path& path, const std::string& text);

// Latent tensors: a one-line JSON header {"dims":[L,d],"dtype":"f32le"},
// a newline, then L*d little-endian float32 values in row-major order.
Bytes encode_latent(const LatentTensor& z);
LatentTensor decode_latent(const Bytes& bytes);
void save_latent(const fs::path& path, const LatentTensor& z);
LatentTensor load_latent(const fs::path& path);

std::string model_to_json(const SubspaceModel& m);
SubspaceModel model_from_json(const std::string& text);

std::string anchors_to_json(const AnchorSet& anchors);
AnchorSet anchors_from_json(const std::string& text);

std::string stats_to_json(const StatsTable& stats);
StatsTable stats_from_json(const std::string& text);

std::string grid_to_json(const ColorGrid& grid);
ColorGrid grid_from_json(const std::string& text);

/// JSON {"L": n, "selected": [...]} or a binary PGM (P5) of the patch
/// grid in which nonzero pixels are selected. The format is detected from
/// the leading bytes.
PatchMask parse_mask(const Bytes& bytes);
PatchMask load_mask(const fs::path& path);

/// One trajectory of latent frames stored next to its manifest.
struct TrajectoryRecord {
    std::string name;
    std::vector<int> timesteps;
    /// Frame files, relative to the manifest's directory.
    std::vector<std::string> files;
};

struct TrajectoryManifest {
    int total_steps = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<TrajectoryRecord> trajectories;
};

std::string manifest_to_json(const TrajectoryManifest& manifest);
TrajectoryManifest manifest_from_json(const std::string& text);

}  // namespace lcs::io
