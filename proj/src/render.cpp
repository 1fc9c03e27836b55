#include "venn/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace venn::render {

namespace {

constexpr std::array<Rgba, 10> kPalette = {{
    {0x1F, 0x77, 0xB4, 255},  // blue
    {0xFF, 0x7F, 0x0E, 255},  // orange
    {0x2C, 0xA0, 0x2C, 255},  // green
    {0xD6, 0x27, 0x28, 255},  // red
    {0x94, 0x67, 0xBD, 255},  // purple
    {0x8C, 0x56, 0x4B, 255},  // brown
    {0xE3, 0x77, 0xC2, 255},  // pink
    {0x7F, 0x7F, 0x7F, 255},  // gray
    {0xBC, 0xBD, 0x22, 255},  // olive
    {0x17, 0xBE, 0xCF, 255},  // cyan
}};

constexpr std::string_view kTextColor = "#000000";

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

Point clamp_to_canvas(Point p, double width, double height) {
  return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
}

}  // namespace

std::string_view to_string(LabelMode m) {
  switch (m) {
    case LabelMode::absolute: return "absolute";
    case LabelMode::percent: return "percent";
    case LabelMode::none: return "none";
  }
  return "unknown";
}

LabelMode parse_label_mode(std::string_view text) {
  if (text == "absolute") return LabelMode::absolute;
  if (text == "percent") return LabelMode::percent;
  if (text == "none") return LabelMode::none;
  throw InputError("unknown label mode '" + std::string(text) + "'");
}

std::string_view to_string(LabelKind k) {
  switch (k) {
    case LabelKind::region_count: return "region_count";
    case LabelKind::set_title: return "set_title";
    case LabelKind::title: return "title";
    case LabelKind::subtitle: return "subtitle";
  }
  return "unknown";
}

Rgba default_color(int index) { return kPalette[static_cast<std::size_t>(index) % kPalette.size()]; }

void DiagramConfig::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) throw InputError("canvas must have positive size");
  if (!(fill_opacity >= 0.0 && fill_opacity <= 1.0)) throw InputError("fill opacity must be in [0, 1]");
  if (!(margin >= 0.0 && margin < 0.5)) throw InputError("margin must be in [0, 0.5)");
  if (!(precision > 0.0)) throw InputError("label precision must be positive");
  if (segments < geometry::kMinSegments)
    throw InputError("at least " + std::to_string(geometry::kMinSegments) + " circle segments required");
}

double DiagramConfig::title_band() const {
  double band = 0.0;
  if (!title.empty()) band += 1.6 * title_font_size;
  if (!subtitle.empty()) band += 1.4 * subtitle_font_size;
  return band;
}

Viewport fit_viewport(std::span<const Point> positions, std::span<const double> radii, double width,
                      double height, double margin, double top_band) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    min_x = std::min(min_x, positions[i].x - radii[i]);
    min_y = std::min(min_y, positions[i].y - radii[i]);
    max_x = std::max(max_x, positions[i].x + radii[i]);
    max_y = std::max(max_y, positions[i].y + radii[i]);
  }
  const double box_x0 = margin * width;
  const double box_x1 = width - margin * width;
  const double box_y0 = margin * height;
  const double box_y1 = std::max(box_y0, height - margin * height - top_band);

  Viewport vp;
  const double bw = max_x - min_x;
  const double bh = max_y - min_y;
  vp.scale = std::min((box_x1 - box_x0) / bw, (box_y1 - box_y0) / bh);
  vp.offset = {0.5 * (box_x0 + box_x1) - vp.scale * 0.5 * (min_x + max_x),
               0.5 * (box_y0 + box_y1) - vp.scale * 0.5 * (min_y + max_y)};
  vp.circles.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    vp.circles.push_back({vp.scale * positions[i] + vp.offset, vp.scale * radii[i]});
  }
  return vp;
}

std::string format_label(std::size_t count, std::size_t union_size, LabelMode mode) {
  switch (mode) {
    case LabelMode::absolute: return std::to_string(count);
    case LabelMode::percent: {
      // tenths of a percent, rounded half up in integer arithmetic
      const std::uint64_t tenths = (1000ull * count * 2 + union_size) / (2ull * union_size);
      return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
    }
    case LabelMode::none: return {};
  }
  return {};
}

std::vector<LabelSpec> compute_labels(const setops::RegionTable& table,
                                      const std::map<Mask, geometry::MultiPolygon>& region_polys,
                                      std::span<const geometry::Circle> circles, const DiagramConfig& config) {
  std::vector<LabelSpec> labels;
  std::map<Mask, Point> poles;
  for (const auto& [mask, ids] : table.exclusive) {
    auto it = region_polys.find(mask);
    if (ids.empty() || it == region_polys.end()) continue;
    poles[mask] = geometry::pole_of_inaccessibility(it->second, config.precision).point;
  }

  if (config.label_mode != LabelMode::none) {
    for (const auto& [mask, pole] : poles) {
      labels.push_back({format_label(table.exclusive.at(mask).size(), table.union_size, config.label_mode),
                        pole, LabelKind::region_count, mask});
    }
  }

  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Mask mask = Mask{1} << i;
    Point anchor;
    if (auto it = poles.find(mask); it != poles.end()) {
      anchor = it->second;
    } else {
      anchor = {circles[i].center.x, circles[i].center.y + circles[i].radius + config.label_font_size};
    }
    const std::string name = i < config.set_names.size() ? config.set_names[i] : "Set " + std::to_string(i + 1);
    labels.push_back({name, clamp_to_canvas(anchor, config.width, config.height), LabelKind::set_title, mask});
  }

  if (!config.title.empty()) {
    labels.push_back({config.title, {config.width / 2.0, config.height - 0.9 * config.title_font_size},
                      LabelKind::title, 0});
  }
  if (!config.subtitle.empty()) {
    const double above = config.title.empty() ? 0.0 : 1.6 * config.title_font_size;
    labels.push_back({config.subtitle,
                      {config.width / 2.0, config.height - above - 0.9 * config.subtitle_font_size},
                      LabelKind::subtitle, 0});
  }
  return labels;
}

Scene build_scene(const optimizer::LayoutState& layout, const geometry::CircleModel& model,
                  const setops::RegionTable& table, const DiagramConfig& config) {
  config.validate();
  Scene scene;
  const Viewport vp =
      fit_viewport(layout.positions, model.radii, config.width, config.height, config.margin, config.title_band());
  scene.circles = vp.circles;
  std::vector<Mask> masks;
  for (const auto& [mask, ids] : table.exclusive) {
    if (!ids.empty()) masks.push_back(mask);
  }
  scene.regions = geometry::region_polygons(scene.circles, masks, config.segments);
  scene.labels = compute_labels(table, scene.regions, scene.circles, config);
  return scene;
}

std::string scene_to_svg(const Scene& scene, const DiagramConfig& config) {
  const double w = config.width;
  const double h = config.height;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_fixed(w)
      << "\" height=\"" << format_fixed(h) << "\" viewBox=\"0 0 " << format_fixed(w) << ' ' << format_fixed(h)
      << "\">\n";
  out << "<rect x=\"0.000000\" y=\"0.000000\" width=\"" << format_fixed(w) << "\" height=\"" << format_fixed(h)
      << "\" fill=\"" << config.background.hex() << "\" fill-opacity=\"" << format_fixed(config.background.opacity())
      << "\"/>\n";

  for (std::size_t i = 0; i < scene.circles.size(); ++i) {
    const auto& c = scene.circles[i];
    const Rgba color = i < config.set_colors.size() ? config.set_colors[i] : default_color(static_cast<int>(i));
    out << "<circle id=\"set-" << i << "\" cx=\"" << format_fixed(c.center.x) << "\" cy=\""
        << format_fixed(h - c.center.y) << "\" r=\"" << format_fixed(c.radius) << "\" fill=\"" << color.hex()
        << "\" fill-opacity=\"" << format_fixed(config.fill_opacity * color.opacity()) << "\" stroke=\""
        << color.hex() << "\" stroke-width=\"2.000000\"/>\n";
  }

  std::vector<bool> has_count(scene.circles.size(), false);
  for (const auto& l : scene.labels) {
    if (l.kind == LabelKind::region_count && popcount(l.mask) == 1) {
      for (std::size_t i = 0; i < has_count.size(); ++i) has_count[i] = has_count[i] || l.mask == (Mask{1} << i);
    }
  }

  for (const auto& l : scene.labels) {
    double size = config.label_font_size;
    double y = h - l.anchor.y;
    std::string_view weight = "normal";
    switch (l.kind) {
      case LabelKind::title: size = config.title_font_size; weight = "bold"; break;
      case LabelKind::subtitle: size = config.subtitle_font_size; break;
      case LabelKind::set_title:
        weight = "bold";
        // sits one line above the count label sharing its anchor
        for (std::size_t i = 0; i < has_count.size(); ++i) {
          if (has_count[i] && l.mask == (Mask{1} << i)) y -= 1.2 * config.label_font_size;
        }
        break;
      case LabelKind::region_count: break;
    }
    out << "<text class=\"" << to_string(l.kind) << "\" x=\"" << format_fixed(l.anchor.x) << "\" y=\""
        << format_fixed(y) << "\" font-family=\"sans-serif\" font-size=\"" << format_fixed(size)
        << "\" font-weight=\"" << weight << "\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\""
        << kTextColor << "\">" << xml_escape(l.text) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_svg(const optimizer::LayoutState& layout, const geometry::CircleModel& model,
                       const setops::RegionTable& table, const DiagramConfig& config) {
  return scene_to_svg(build_scene(layout, model, table, config), config);
}

}  // namespace venn::render
