// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <filesystem>

#include "depthqa/frame.hpp"

// Frame file formats.
//
// Binary (canonical, extension .dtf):
//   ASCII header line "DTF1 <width> <height>\n" followed by width*height
//   little-endian unsigned 16-bit samples, row-major.
// CSV:
//   first line "<width> <height>", then height lines of width comma-separated
//   integers in [0, 65535].
//
// write_frame followed by read_frame is the identity on DepthFrame for both.

namespace depthqa {

DepthFrame read_frame_dtf1(const std::filesystem::path& path);
DepthFrame read_frame_csv(const std::filesystem::path& path);
void write_frame_dtf1(const DepthFrame& frame, const std::filesystem::path& path);
void write_frame_csv(const DepthFrame& frame, const std::filesystem::path& path);

// Sniffs the DTF1 magic, falls back to CSV.
DepthFrame read_frame(const std::filesystem::path& path);
// Picks CSV for a ".csv" extension, DTF1 otherwise.
void write_frame(const DepthFrame& frame, const std::filesystem::path& path);

}  // namespace depthqa
