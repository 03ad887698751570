// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "depthqa/frame.hpp"
#include "depthqa/frame_io.hpp"
#include "helpers.hpp"

using namespace depthqa;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / name;
}

// Independent oracle: plain summation over nonzero values.
FrameStats brute_force_stats(const DepthFrame& frame, const Region& r) {
  FrameStats s;
  s.min_mm = 65536;
  s.max_mm = -1;
  double sum = 0.0;
  std::vector<double> kept;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      const int v = frame.at(x, y);
      if (v == 0) continue;
      kept.push_back(v);
      sum += v;
      s.min_mm = std::min(s.min_mm, v);
      s.max_mm = std::max(s.max_mm, v);
    }
  }
  s.valid_count = static_cast<std::int64_t>(kept.size());
  s.mean_mm = sum / static_cast<double>(kept.size());
  double sq = 0.0;
  for (const double v : kept) sq += (v - s.mean_mm) * (v - s.mean_mm);
  s.stddev_mm = std::sqrt(sq / static_cast<double>(kept.size()));
  return s;
}

}  // namespace

TEST_CASE("frame construction enforces the 2x2 minimum and sample count") {
  CHECK_THROWS_AS(DepthFrame(1, 5, std::vector<std::uint16_t>(5, 0)), DimensionMismatch);
  CHECK_THROWS_AS(DepthFrame(5, 1, std::vector<std::uint16_t>(5, 0)), DimensionMismatch);
  CHECK_THROWS_AS(DepthFrame(2, 2, std::vector<std::uint16_t>(3, 0)), DimensionMismatch);
}

TEST_CASE("frame_stats of the reference 2 m capture") {
  const DepthFrame frame = testing::reference_capture_2m();
  const FrameStats s = frame_stats(frame);
  CHECK(s.mean_mm == doctest::Approx(1999.8).epsilon(1e-12));
  CHECK(s.stddev_mm == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(s.min_mm == 1996);
  CHECK(s.max_mm == 2004);
  CHECK(s.valid_count == 3500);
}

TEST_CASE("frame_stats of a constant frame") {
  const FrameStats s = frame_stats(testing::constant_frame(8, 8, 1000));
  CHECK(s.mean_mm == 1000.0);
  CHECK(s.stddev_mm == 0.0);
  CHECK(s.min_mm == 1000);
  CHECK(s.max_mm == 1000);
}

TEST_CASE("frame_stats skips the zero sentinel") {
  const DepthFrame frame(2, 2, {1000, 1002, 0, 1004});
  const FrameStats s = frame_stats(frame);
  CHECK(s.mean_mm == doctest::Approx(1002.0).epsilon(1e-12));
  CHECK(s.min_mm == 1000);
  CHECK(s.max_mm == 1004);
  CHECK(s.valid_count == 3);
}

TEST_CASE("frame_stats region handling") {
  const DepthFrame frame(4, 4, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  const FrameStats s = frame_stats(frame, Region{1, 1, 2, 2});
  CHECK(s.mean_mm == doctest::Approx((6 + 7 + 10 + 11) / 4.0));

  CHECK_THROWS_AS(frame_stats(frame, Region{3, 3, 2, 2}), OutOfBounds);
  CHECK_THROWS_AS(frame_stats(frame, Region{0, 0, 0, 2}), OutOfBounds);
  CHECK_THROWS_AS(frame_stats(frame, Region{-1, 0, 2, 2}), OutOfBounds);

  const DepthFrame zeros(4, 4, std::vector<std::uint16_t>(16, 0));
  CHECK_THROWS_AS(frame_stats(zeros), EmptyRegion);
}

TEST_CASE("frame_stats matches the brute-force oracle and ignores added zeros") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DepthFrame frame = testing::random_frame(17, 13, 900, 1100, seed, 0.2);
    bool any = false;
    for (const auto v : frame.samples()) any |= v != 0;
    if (!any) continue;

    const Region full{0, 0, frame.width(), frame.height()};
    const FrameStats got = frame_stats(frame);
    const FrameStats want = brute_force_stats(frame, full);
    CHECK(got.mean_mm == doctest::Approx(want.mean_mm).epsilon(1e-9));
    CHECK(got.stddev_mm == doctest::Approx(want.stddev_mm).epsilon(1e-9));
    CHECK(got.min_mm == want.min_mm);
    CHECK(got.max_mm == want.max_mm);
    CHECK(got.valid_count == want.valid_count);

    // surrounding the frame with zero pixels changes nothing
    std::vector<std::uint16_t> padded(static_cast<std::size_t>(frame.width() + 2) *
                                          (frame.height() + 2),
                                      0);
    for (int y = 0; y < frame.height(); ++y) {
      for (int x = 0; x < frame.width(); ++x) {
        padded[static_cast<std::size_t>(y + 1) * (frame.width() + 2) + x + 1] = frame.at(x, y);
      }
    }
    const DepthFrame grown(frame.width() + 2, frame.height() + 2, std::move(padded));
    const FrameStats padded_stats = frame_stats(grown);
    CHECK(padded_stats.mean_mm == doctest::Approx(got.mean_mm).epsilon(1e-12));
    CHECK(padded_stats.stddev_mm == doctest::Approx(got.stddev_mm).epsilon(1e-12));
    CHECK(padded_stats.min_mm == got.min_mm);
    CHECK(padded_stats.max_mm == got.max_mm);
    CHECK(padded_stats.valid_count == got.valid_count);

    CHECK(got.min_mm <= got.mean_mm);
    CHECK(got.mean_mm <= got.max_mm);
    CHECK(got.stddev_mm >= 0.0);
  }
}

TEST_CASE("binary and csv round trips") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DepthFrame frame = testing::random_frame(37, 23, 0, 65535, seed);
    const fs::path bin = temp_file("roundtrip.dtf");
    const fs::path csv = temp_file("roundtrip.csv");
    write_frame(frame, bin);
    write_frame(frame, csv);
    CHECK(read_frame(bin) == frame);
    CHECK(read_frame(csv) == frame);
    fs::remove(bin);
    fs::remove(csv);
  }

  // full-size frame, binary
  const DepthFrame big = testing::random_frame(512, 424, 500, 4000, 99);
  const fs::path bin = temp_file("roundtrip_big.dtf");
  write_frame(big, bin);
  CHECK(read_frame(bin) == big);
  fs::remove(bin);
}

TEST_CASE("csv decoding matches the format by hand") {
  const fs::path path = temp_file("hand.csv");
  std::ofstream(path) << "2 2\n1000,1001\n1002,0\n";
  const DepthFrame frame = read_frame(path);
  CHECK(frame.width() == 2);
  CHECK(frame.height() == 2);
  CHECK(frame.at(0, 0) == 1000);
  CHECK(frame.at(1, 0) == 1001);
  CHECK(frame.at(0, 1) == 1002);
  CHECK(frame.at(1, 1) == 0);
  fs::remove(path);
}

TEST_CASE("truncated binary payload") {
  const fs::path path = temp_file("truncated.dtf");
  {
    std::ofstream out(path, std::ios::binary);
    out << "DTF1 4 4\n";
    const std::uint16_t samples[10] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    out.write(reinterpret_cast<const char*>(samples), sizeof(samples));
  }
  CHECK_THROWS_AS(read_frame_dtf1(path), TruncatedFile);
  fs::remove(path);
}

TEST_CASE("malformed headers") {
  const fs::path path = temp_file("bad_header.dtf");
  std::ofstream(path) << "DTFX 4 4\n";
  CHECK_THROWS_AS(read_frame_dtf1(path), FormatError);

  std::ofstream(path) << "DTF1 4\n";
  CHECK_THROWS_AS(read_frame_dtf1(path), FormatError);

  std::ofstream(path) << "DTF1 1 4\n";
  CHECK_THROWS_AS(read_frame_dtf1(path), DimensionMismatch);

  std::ofstream(path) << "DTF1 -3 4\n";
  CHECK_THROWS_AS(read_frame_dtf1(path), FormatError);
  fs::remove(path);
}

TEST_CASE("csv structural errors") {
  const fs::path path = temp_file("bad.csv");

  std::ofstream(path) << "2 3\n1,2\n3,4\n";
  CHECK_THROWS_AS(read_frame_csv(path), TruncatedFile);

  std::ofstream(path) << "2 2\n1,2,3\n4,5\n";
  CHECK_THROWS_AS(read_frame_csv(path), DimensionMismatch);

  std::ofstream(path) << "2 2\n1,2\n3,x\n";
  CHECK_THROWS_AS(read_frame_csv(path), FormatError);

  std::ofstream(path) << "2 2\n1,2\n3,70000\n";
  CHECK_THROWS_AS(read_frame_csv(path), FormatError);

  std::ofstream(path) << "2 2\n1,2\n3,4\n5,6\n";
  CHECK_THROWS_AS(read_frame_csv(path), FormatError);
  fs::remove(path);
}

TEST_CASE("binary trailing bytes rejected") {
  const fs::path path = temp_file("trailing.dtf");
  {
    std::ofstream out(path, std::ios::binary);
    out << "DTF1 2 2\n";
    const std::uint16_t samples[5] = {1, 2, 3, 4, 5};
    out.write(reinterpret_cast<const char*>(samples), sizeof(samples));
  }
  CHECK_THROWS_AS(read_frame_dtf1(path), FormatError);
  fs::remove(path);
}
