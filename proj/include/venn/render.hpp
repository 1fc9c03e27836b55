#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "venn/common.hpp"
#include "venn/geometry.hpp"
#include "venn/optimizer.hpp"
#include "venn/setops.hpp"

namespace venn::render {

enum class LabelMode { absolute, percent, none };

std::string_view to_string(LabelMode m);
LabelMode parse_label_mode(std::string_view text);

// Ten distinguishable hues, cycled by set index.
Rgba default_color(int index);

struct DiagramConfig {
  std::string title;
  std::string subtitle;
  LabelMode label_mode = LabelMode::absolute;
  std::vector<std::string> set_names;
  std::vector<Rgba> set_colors;
  Rgba background{255, 255, 255, 255};
  double width = 800.0;
  double height = 800.0;
  double fill_opacity = 0.5;
  double title_font_size = 28.0;
  double subtitle_font_size = 18.0;
  double label_font_size = 16.0;
  double margin = 0.08;  // fraction of each side
  int segments = geometry::kDefaultSegments;
  double precision = geometry::kDefaultPrecision;

  void validate() const;
  // Height reserved at the top for title and subtitle.
  double title_band() const;
};

enum class LabelKind { region_count, set_title, title, subtitle };

std::string_view to_string(LabelKind k);

// Anchors are canvas units with y pointing up, the layout's convention.
struct LabelSpec {
  std::string text;
  Point anchor;
  LabelKind kind = LabelKind::region_count;
  Mask mask = 0;  // region or set for region_count/set_title labels
};

struct Viewport {
  std::vector<geometry::Circle> circles;
  double scale = 1.0;
  Point offset;  // canvas = scale * layout + offset
};

// Uniform scale + translation of the circles' bounding box into the canvas minus `margin` on
// every side and `top_band` extra at the top, centered in that box.
Viewport fit_viewport(std::span<const Point> positions, std::span<const double> radii, double width,
                      double height, double margin = 0.08, double top_band = 0.0);

std::string format_label(std::size_t count, std::size_t union_size, LabelMode mode);

std::vector<LabelSpec> compute_labels(const setops::RegionTable& table,
                                      const std::map<Mask, geometry::MultiPolygon>& region_polys,
                                      std::span<const geometry::Circle> circles, const DiagramConfig& config);

// Everything the document is drawn from, after fitting.
struct Scene {
  std::vector<geometry::Circle> circles;
  std::map<Mask, geometry::MultiPolygon> regions;
  std::vector<LabelSpec> labels;
};

Scene build_scene(const optimizer::LayoutState& layout, const geometry::CircleModel& model,
                  const setops::RegionTable& table, const DiagramConfig& config);

std::string render_svg(const optimizer::LayoutState& layout, const geometry::CircleModel& model,
                       const setops::RegionTable& table, const DiagramConfig& config);

std::string scene_to_svg(const Scene& scene, const DiagramConfig& config);

// Decoded raster, RGB, row-major, top row first.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Rgba pixel(int x, int y) const;
};

// Draws a document produced by render_svg. Throws RenderError on anything else.
Image rasterize(std::string_view svg, double pixel_scale = 1.0);

std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> rasterize_png(std::string_view svg, double pixel_scale = 1.0);

}  // namespace venn::render
