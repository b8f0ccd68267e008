#include "gridsar/render.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gridsar {

namespace {

class Canvas {
 public:
  Canvas(int w, int h, std::array<uint8_t, 3> fill) : w_(w), h_(h), px_(static_cast<size_t>(w) * h * 3) {
    for (size_t k = 0; k < px_.size(); k += 3) {
      px_[k] = fill[0];
      px_[k + 1] = fill[1];
      px_[k + 2] = fill[2];
    }
  }

  void set(int x, int y, std::array<uint8_t, 3> c) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    const size_t k = (static_cast<size_t>(y) * w_ + x) * 3;
    px_[k] = c[0];
    px_[k + 1] = c[1];
    px_[k + 2] = c[2];
  }

  void fill_rect(int x0, int y0, int x1, int y1, std::array<uint8_t, 3> c) {
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) set(x, y, c);
  }

  std::vector<uint8_t> to_ppm() const {
    std::string head = "P6\n" + std::to_string(w_) + " " + std::to_string(h_) + "\n255\n";
    std::vector<uint8_t> out(head.begin(), head.end());
    out.insert(out.end(), px_.begin(), px_.end());
    return out;
  }

 private:
  int w_, h_;
  std::vector<uint8_t> px_;
};

std::array<uint8_t, 3> lerp(std::array<uint8_t, 3> a, std::array<uint8_t, 3> b, double t) {
  std::array<uint8_t, 3> out;
  for (int k = 0; k < 3; ++k)
    out[k] = static_cast<uint8_t>(std::lround(a[k] + (b[k] - a[k]) * t));
  return out;
}

}  // namespace

std::vector<uint8_t> render_trajectory(const EpisodeResult& episode, const Scenario& sc,
                                       const RenderOptions& opts) {
  if (opts.scale < 1) throw std::invalid_argument("render scale must be >= 1");
  const MapGeometry& geom = sc.geom;
  const World world = build_world(sc);
  const BeliefMap belief = build_belief(sc);
  const int rn = geom.raster_n();
  const int s = opts.scale;
  const int size = rn * s;
  Canvas canvas(size, size, opts.palette.background);

  // Raster point -> top-left pixel of its block; y flipped so north is up.
  const auto px_of = [&](int rx, int ry, int& x, int& y) {
    x = rx * s;
    y = (rn - 1 - ry) * s;
  };

  double max_belief = 0.0;
  for (double v : belief.data()) max_belief = std::max(max_belief, v);

  for (int ry = 0; ry < rn; ++ry) {
    for (int rx = 0; rx < rn; ++rx) {
      const FinePosition p = raster_position(RasterPoint{rx, ry}, geom);
      std::array<uint8_t, 3> color = opts.palette.background;
      const double b = max_belief > 0 ? belief.at(cell_of(p, geom)) / max_belief : 0.0;
      if (b > 0) color = lerp(opts.palette.background, opts.palette.belief_full, b);
      if (world.obstacles.height_at(rx, ry) > 0) color = opts.palette.obstacle;
      for (const NoFlyZone& z : world.zones)
        if (z.contains(p.x, p.y)) color = opts.palette.no_fly;
      int x, y;
      px_of(rx, ry, x, y);
      canvas.fill_rect(x, y, x + s - 1, y + s - 1, color);
    }
  }

  if (opts.grid_lines) {
    const int step = static_cast<int>(std::lround(geom.cell_size_m() / geom.raster_res_m)) * s;
    for (int k = step; k < size; k += step)
      for (int t = 0; t < size; ++t) {
        canvas.set(k, t, opts.palette.grid_line);
        canvas.set(t, k, opts.palette.grid_line);
      }
  }

  for (const FinePosition& p : episode.trajectory) {
    const RasterPoint rp = raster_of(p, geom);
    int x, y;
    px_of(rp.rx, rp.ry, x, y);
    canvas.fill_rect(x, y, x + s - 1, y + s - 1, opts.palette.path);
  }

  const int glyph = 2 * s;
  for (size_t k = 0; k < episode.target_cells.size(); ++k) {
    const FinePosition c = cell_center(episode.target_cells[k], geom);
    const RasterPoint rp = raster_of(c, geom);
    int x, y;
    px_of(rp.rx, rp.ry, x, y);
    canvas.fill_rect(x - glyph, y - glyph, x + glyph, y + glyph, opts.palette.target);
    if (k < episode.found_epoch.size() && episode.found_epoch[k] >= 0)
      canvas.fill_rect(x - s / 2, y - s / 2, x + s / 2, y + s / 2, opts.palette.target_found);
  }

  {
    const RasterPoint rp = raster_of(sc.start, geom);
    int x, y;
    px_of(rp.rx, rp.ry, x, y);
    canvas.fill_rect(x - glyph, y - glyph, x + glyph, y + glyph, opts.palette.start);
  }

  return canvas.to_ppm();
}

void save_image(const std::vector<uint8_t>& ppm_bytes, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write image file: " + path);
  out.write(reinterpret_cast<const char*>(ppm_bytes.data()),
            static_cast<std::streamsize>(ppm_bytes.size()));
  if (!out) throw std::runtime_error("image write failed: " + path);
}

std::array<uint8_t, 3> ppm_pixel(const std::vector<uint8_t>& ppm, int x, int y) {
  // Header is "P6\n<w> <h>\n255\n".
  size_t pos = 0;
  int fields = 0;
  int w = 0, h = 0;
  std::string tok;
  while (pos < ppm.size() && fields < 4) {
    const char c = static_cast<char>(ppm[pos++]);
    if (c == '\n' || c == ' ') {
      if (tok.empty()) continue;
      if (fields == 1) w = std::stoi(tok);
      if (fields == 2) h = std::stoi(tok);
      ++fields;
      tok.clear();
    } else {
      tok += c;
    }
  }
  if (fields < 4 || x < 0 || y < 0 || x >= w || y >= h)
    throw std::invalid_argument("pixel lookup outside image");
  const size_t k = pos + (static_cast<size_t>(y) * w + x) * 3;
  return {ppm[k], ppm[k + 1], ppm[k + 2]};
}

}  // namespace gridsar
