#pragma once

#include <string>
#include <string_view>

#include "tilebars/interaction.hpp"

namespace tilebars {

enum class RenderMode { kGrayscaleTf, kRgb3Channel };

/// Accepts "gray", "grayscale", "grayscale-tf", "rgb", "rgb-3channel".
RenderMode parse_render_mode(std::string_view text);

/// Short name used in file names: "gray" or "rgb".
std::string render_mode_name(RenderMode mode);

struct RenderSpec {
  int cell_px = 8;
  RenderMode mode = RenderMode::kGrayscaleTf;
  double gamma = 1.0;
  bool grid_lines = false;

  void validate() const;
};

// Grid lines are one pixel wide and drawn around and between every cell.
inline constexpr unsigned char kGridShade = 160;

/// width = n_b * cell_px + (grid_lines ? n_b + 1 : 0)
int image_width(const InteractionMatrix& matrix, const RenderSpec& spec);
/// height = n_q * cell_px + (grid_lines ? n_q + 1 : 0)
int image_height(const InteractionMatrix& matrix, const RenderSpec& spec);

/// 255 - round_half_up(255 * (value / max)^gamma); white when max <= 0.
unsigned char shade(double value, double max, double gamma);

/// Binary P6 pixmap. Grayscale shades every cell by tf; rgb maps tf, idf and
/// sim to red, green and blue, each normalized by its own matrix maximum.
std::string render(const InteractionMatrix& matrix, const RenderSpec& spec);

/// "<query_id>_<doc_id>.<mode>.ppm"
std::string render_file_name(std::string_view query_id, std::string_view doc_id, RenderMode mode);

/// Two header lines, then one "row col tf idf sim" line per cell with the
/// channel values in fixed 4-decimal form.
std::string render_grid_dump(const InteractionMatrix& matrix);

InteractionMatrix parse_grid_dump(std::string_view text);

}  // namespace tilebars
