#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gridsar/mission.hpp"

namespace gridsar {

/// Fixed palette, documented in the README and pinned by tests.
struct RenderPalette {
  std::array<uint8_t, 3> background{255, 255, 255};
  std::array<uint8_t, 3> belief_full{20, 120, 20};  // interpolated from background
  std::array<uint8_t, 3> obstacle{128, 128, 128};
  std::array<uint8_t, 3> no_fly{220, 50, 40};
  std::array<uint8_t, 3> path{250, 200, 40};
  std::array<uint8_t, 3> target{140, 40, 160};
  std::array<uint8_t, 3> target_found{255, 255, 255};  // center dot on found targets
  std::array<uint8_t, 3> start{30, 90, 220};
  std::array<uint8_t, 3> grid_line{210, 210, 210};
};

struct RenderOptions {
  int scale = 2;  // pixels per raster point
  bool grid_lines = true;
  RenderPalette palette;
};

/// Binary PPM (P6) image of one episode over its scenario: initial belief as
/// a white-to-green heat layer, obstacles grey, no-fly zones red, flight path
/// yellow, targets purple (white-dotted once found), start blue. North is up:
/// image row 0 holds the largest y. Output bytes depend only on the inputs.
std::vector<uint8_t> render_trajectory(const EpisodeResult& episode, const Scenario& sc,
                                       const RenderOptions& opts = {});

void save_image(const std::vector<uint8_t>& ppm_bytes, const std::string& path);

/// Pixel lookup inside rendered PPM bytes (for tests and tooling).
std::array<uint8_t, 3> ppm_pixel(const std::vector<uint8_t>& ppm, int x, int y);

}  // namespace gridsar
