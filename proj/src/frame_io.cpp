// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/frame_io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace depthqa {

namespace {

constexpr char kMagic[] = "DTF1";

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  return in;
}

int parse_positive_int(std::string_view token, const char* what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || value <= 0) {
    throw FormatError(std::string("bad ") + what + " field '" + std::string(token) + "'");
  }
  return value;
}

std::pair<int, int> parse_dimension_line(const std::string& line, bool expect_magic) {
  std::istringstream fields(line);
  std::string first;
  if (expect_magic) {
    fields >> first;
    if (first != kMagic) {
      throw FormatError("bad magic '" + first + "'");
    }
  }
  std::string w, h, extra;
  if (!(fields >> w >> h) || (fields >> extra)) {
    throw FormatError("malformed header line '" + line + "'");
  }
  const int width = parse_positive_int(w, "width");
  const int height = parse_positive_int(h, "height");
  if (width < 2 || height < 2) {
    throw DimensionMismatch("declared dimensions " + std::to_string(width) + "x" +
                            std::to_string(height) + " below the 2x2 minimum");
  }
  return {width, height};
}

}  // namespace

DepthFrame read_frame_dtf1(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string header;
  if (!std::getline(in, header)) {
    throw FormatError("missing header in " + path.string());
  }
  const auto [width, height] = parse_dimension_line(header, /*expect_magic=*/true);

  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint16_t> samples(count);
  std::vector<unsigned char> raw(count * 2);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw TruncatedFile(path.string() + ": expected " + std::to_string(count) +
                        " samples, got " + std::to_string(in.gcount() / 2));
  }
  if (in.peek() != EOF) {
    throw FormatError(path.string() + ": trailing bytes after sample data");
  }
  for (std::size_t i = 0; i < count; ++i) {
    samples[i] = static_cast<std::uint16_t>(raw[2 * i] | (raw[2 * i + 1] << 8));
  }
  return DepthFrame(width, height, std::move(samples));
}

DepthFrame read_frame_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("missing header in " + path.string());
  }
  const auto [width, height] = parse_dimension_line(line, /*expect_magic=*/false);

  std::vector<std::uint16_t> samples;
  samples.reserve(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    if (!std::getline(in, line)) {
      throw TruncatedFile(path.string() + ": only " + std::to_string(row) + " of " +
                          std::to_string(height) + " rows present");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int cols = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string token = line.substr(pos, comma == std::string::npos ? comma : comma - pos);
      int value = 0;
      const auto* end = token.data() + token.size();
      const auto [ptr, ec] = std::from_chars(token.data(), end, value);
      if (ec != std::errc{} || ptr != end || value < 0 || value > 65535) {
        throw FormatError(path.string() + ": bad sample '" + token + "'");
      }
      samples.push_back(static_cast<std::uint16_t>(value));
      ++cols;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (cols != width) {
      throw DimensionMismatch(path.string() + ": row " + std::to_string(row) + " has " +
                              std::to_string(cols) + " values, expected " +
                              std::to_string(width));
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") {
      throw FormatError(path.string() + ": trailing data after row " + std::to_string(height));
    }
  }
  return DepthFrame(width, height, std::move(samples));
}

void write_frame_dtf1(const DepthFrame& frame, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot open " + path.string() + " for writing");
  }
  out << kMagic << ' ' << frame.width() << ' ' << frame.height() << '\n';
  std::vector<unsigned char> raw;
  raw.reserve(frame.samples().size() * 2);
  for (const std::uint16_t v : frame.samples()) {
    raw.push_back(static_cast<unsigned char>(v & 0xFF));
    raw.push_back(static_cast<unsigned char>(v >> 8));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void write_frame_csv(const DepthFrame& frame, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot open " + path.string() + " for writing");
  }
  out << frame.width() << ' ' << frame.height() << '\n';
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      if (x) out << ',';
      out << frame.at(x, y);
    }
    out << '\n';
  }
}

DepthFrame read_frame(const std::filesystem::path& path) {
  {
    std::ifstream in = open_input(path);
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0) {
      return read_frame_dtf1(path);
    }
  }
  return read_frame_csv(path);
}

void write_frame(const DepthFrame& frame, const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    write_frame_csv(frame, path);
  } else {
    write_frame_dtf1(frame, path);
  }
}

}  // namespace depthqa
