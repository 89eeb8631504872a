#include "tilebars/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tilebars {

RenderMode parse_render_mode(std::string_view text) {
  if (text == "gray" || text == "grayscale" || text == "grayscale-tf") return RenderMode::kGrayscaleTf;
  if (text == "rgb" || text == "rgb-3channel") return RenderMode::kRgb3Channel;
  throw InputError("unknown render mode: " + std::string(text));
}

std::string render_mode_name(RenderMode mode) { return mode == RenderMode::kGrayscaleTf ? "gray" : "rgb"; }

void RenderSpec::validate() const {
  if (cell_px < 1) throw InvariantError("cell_px must be >= 1");
  if (!(gamma > 0.0)) throw InvariantError("gamma must be > 0");
}

int image_width(const InteractionMatrix& matrix, const RenderSpec& spec) {
  return matrix.n_b() * spec.cell_px + (spec.grid_lines ? matrix.n_b() + 1 : 0);
}

int image_height(const InteractionMatrix& matrix, const RenderSpec& spec) {
  return matrix.n_q() * spec.cell_px + (spec.grid_lines ? matrix.n_q() + 1 : 0);
}

unsigned char shade(double value, double max, double gamma) {
  if (!(max > 0.0)) return 255;
  const double ratio = std::clamp(value / max, 0.0, 1.0);
  const double level = std::floor(255.0 * std::pow(ratio, gamma) + 0.5);
  return static_cast<unsigned char>(255 - static_cast<int>(level));
}

std::string render(const InteractionMatrix& matrix, const RenderSpec& spec) {
  spec.validate();
  std::array<double, kChannels> max{0.0, 0.0, 0.0};
  for (int r = 0; r < matrix.n_q(); ++r) {
    for (int c = 0; c < matrix.n_b(); ++c) {
      for (int ch = 0; ch < kChannels; ++ch) max[ch] = std::max(max[ch], matrix.at(r, c, ch));
    }
  }

  const int width = image_width(matrix, spec);
  const int height = image_height(matrix, spec);
  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  std::vector<unsigned char> pixels(stride * static_cast<std::size_t>(height), kGridShade);
  const int pitch = spec.cell_px + (spec.grid_lines ? 1 : 0);
  const int origin = spec.grid_lines ? 1 : 0;

  for (int r = 0; r < matrix.n_q(); ++r) {
    for (int c = 0; c < matrix.n_b(); ++c) {
      std::array<unsigned char, 3> rgb{};
      if (spec.mode == RenderMode::kGrayscaleTf) {
        const unsigned char g = shade(matrix.at(r, c, kTfChannel), max[kTfChannel], spec.gamma);
        rgb = {g, g, g};
      } else {
        for (int ch = 0; ch < kChannels; ++ch) rgb[ch] = shade(matrix.at(r, c, ch), max[ch], spec.gamma);
      }
      const int y0 = origin + r * pitch;
      const int x0 = origin + c * pitch;
      for (int y = y0; y < y0 + spec.cell_px; ++y) {
        unsigned char* row = pixels.data() + static_cast<std::size_t>(y) * stride;
        for (int x = x0; x < x0 + spec.cell_px; ++x) std::copy(rgb.begin(), rgb.end(), row + 3 * x);
      }
    }
  }

  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  return out;
}

std::string render_file_name(std::string_view query_id, std::string_view doc_id, RenderMode mode) {
  return std::string(query_id) + "_" + std::string(doc_id) + "." + render_mode_name(mode) + ".ppm";
}

std::string render_grid_dump(const InteractionMatrix& matrix) {
  std::string out = "# tilebars-grid n_q=" + std::to_string(matrix.n_q()) + " n_b=" + std::to_string(matrix.n_b()) +
                    "\n";
  char line[128];
  std::snprintf(line, sizeof(line), "%4s %4s %12s %12s %12s\n", "row", "col", "tf", "idf", "sim");
  out += line;
  for (int r = 0; r < matrix.n_q(); ++r) {
    for (int c = 0; c < matrix.n_b(); ++c) {
      std::snprintf(line, sizeof(line), "%4d %4d %12.4f %12.4f %12.4f\n", r, c, matrix.at(r, c, kTfChannel),
                    matrix.at(r, c, kIdfChannel), matrix.at(r, c, kSimChannel));
      out += line;
    }
  }
  return out;
}

InteractionMatrix parse_grid_dump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  int n_q = -1, n_b = -1;
  if (!std::getline(in, header) || std::sscanf(header.c_str(), "# tilebars-grid n_q=%d n_b=%d", &n_q, &n_b) != 2) {
    throw InputError("grid dump: missing header");
  }
  std::string columns;
  std::getline(in, columns);
  InteractionMatrix matrix(n_q, n_b);
  std::string line;
  std::size_t cells = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    int r = -1, c = -1;
    CellColor color{};
    if (!(fields >> r >> c >> color[0] >> color[1] >> color[2]) || r < 0 || r >= n_q || c < 0 || c >= n_b) {
      throw InputError("grid dump: malformed cell line: " + line);
    }
    matrix.set_cell(r, c, color);
    ++cells;
  }
  if (cells != static_cast<std::size_t>(n_q) * static_cast<std::size_t>(n_b)) {
    throw InputError("grid dump: expected " + std::to_string(n_q * n_b) + " cells");
  }
  return matrix;
}

}  // namespace tilebars
