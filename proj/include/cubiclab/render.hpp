#pragma once

#include "cubiclab/cone_atlas.hpp"

#include <optional>
#include <set>

namespace cubiclab {

enum class Layer { CUBIC, HESSIAN, ASYMPTOTES, SHADE_Q, MARK_POINTS };

std::string to_string(Layer l);
Layer layer_from_string(const std::string& s);

struct FigureStyle
{
  std::string cubic_stroke = "#1b4f9c";
  std::string hessian_stroke = "#b03a2e";
  std::string asymptote_stroke = "#7b7d7d";
  std::string shade_fill = "#f3c77a";
  std::string point_fill = "#111111";
  double stroke_width = 1.5;
};

struct FigureSpec
{
  double k = 5.0;
  std::optional<RayVector> a_point;
  std::array<double, 4> viewport{-3, 3, -3, 3};  // xmin, xmax, ymin, ymax on z = 1
  std::set<Layer> layers;
  int width_px = 600;
  int height_px = 600;
  FigureStyle style;
  /// Raster columns used for shading; rows follow the aspect ratio.
  int shade_columns = 240;
};

/// SVG text of the figure. Curves are clipped polylines of the traced
/// samples; q-subcone regions are shaded by run-length rasterisation, one
/// group per region of q_subcone(k, HYBRID_B1B2, A).
std::string render_figure(const FigureSpec& spec, const Tolerances& tol = {});

/// fig1 .. fig5.
FigureSpec figure_preset(const std::string& name);
std::vector<std::string> figure_presets();

} // namespace cubiclab
