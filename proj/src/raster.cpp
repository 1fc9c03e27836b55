#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "venn/render.hpp"

namespace venn::render {

namespace pt = boost::property_tree;

namespace {

constexpr int kShift = 8;  // fractional bits for sub-pixel drawing
constexpr double kFixed = 1 << kShift;

double number_attr(const pt::ptree& node, const char* name) {
  const auto value = node.get_optional<std::string>(std::string("<xmlattr>.") + name);
  if (!value) throw RenderError(std::string("missing attribute '") + name + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(*value, &used);
    if (used != value->size() || !std::isfinite(v)) throw std::invalid_argument(*value);
    return v;
  } catch (const std::exception&) {
    throw RenderError(std::string("bad numeric attribute '") + name + "'");
  }
}

double number_attr_or(const pt::ptree& node, const char* name, double fallback) {
  return node.get_optional<std::string>(std::string("<xmlattr>.") + name) ? number_attr(node, name) : fallback;
}

Rgba color_attr(const pt::ptree& node, const char* name, Rgba fallback) {
  const auto value = node.get_optional<std::string>(std::string("<xmlattr>.") + name);
  if (!value || *value == "none") return fallback;
  try {
    return Rgba::parse(*value);
  } catch (const InputError&) {
    throw RenderError(std::string("bad color attribute '") + name + "'");
  }
}

// Composites `color` onto `canvas` weighted by coverage * opacity.
void blend(cv::Mat3b& canvas, const cv::Mat1b& coverage, Rgba color, double opacity) {
  for (int y = 0; y < canvas.rows; ++y) {
    const auto* cov = coverage.ptr<std::uint8_t>(y);
    auto* px = canvas.ptr<cv::Vec3b>(y);
    for (int x = 0; x < canvas.cols; ++x) {
      if (cov[x] == 0) continue;
      const double a = opacity * cov[x] / 255.0;
      const double bgr[3] = {static_cast<double>(color.b), static_cast<double>(color.g),
                             static_cast<double>(color.r)};
      for (int k = 0; k < 3; ++k) px[x][k] = cv::saturate_cast<std::uint8_t>(px[x][k] * (1.0 - a) + bgr[k] * a);
    }
  }
}

cv::Point fixed_point(double x, double y) {
  return {static_cast<int>(std::lround(x * kFixed)), static_cast<int>(std::lround(y * kFixed))};
}

void draw_circle(cv::Mat3b& canvas, const pt::ptree& node, double scale) {
  const double cx = number_attr(node, "cx") * scale;
  const double cy = number_attr(node, "cy") * scale;
  const double r = number_attr(node, "r") * scale;
  const Rgba fill = color_attr(node, "fill", Rgba{0, 0, 0, 0});
  const Rgba stroke = color_attr(node, "stroke", Rgba{0, 0, 0, 0});
  const double fill_opacity = number_attr_or(node, "fill-opacity", 1.0);
  const double stroke_width = number_attr_or(node, "stroke-width", 1.0) * scale;

  cv::Mat1b mask(canvas.size(), 0);
  const int radius = static_cast<int>(std::lround(r * kFixed));
  if (fill.a > 0) {
    cv::circle(mask, fixed_point(cx, cy), radius, cv::Scalar(255), cv::FILLED, cv::LINE_AA, kShift);
    blend(canvas, mask, fill, fill_opacity);
  }
  if (stroke.a > 0 && stroke_width > 0.0) {
    mask.setTo(0);
    const int thickness = std::max(1, static_cast<int>(std::lround(stroke_width)));
    cv::circle(mask, fixed_point(cx, cy), radius, cv::Scalar(255), thickness, cv::LINE_AA, kShift);
    blend(canvas, mask, stroke, 1.0);
  }
}

void draw_rect(cv::Mat3b& canvas, const pt::ptree& node, double scale) {
  const double x = number_attr_or(node, "x", 0.0) * scale;
  const double y = number_attr_or(node, "y", 0.0) * scale;
  const double w = number_attr(node, "width") * scale;
  const double h = number_attr(node, "height") * scale;
  cv::Mat1b mask(canvas.size(), 0);
  cv::rectangle(mask, cv::Point(static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y))),
                cv::Point(static_cast<int>(std::lround(x + w)) - 1, static_cast<int>(std::lround(y + h)) - 1),
                cv::Scalar(255), cv::FILLED);
  blend(canvas, mask, color_attr(node, "fill", Rgba{0, 0, 0, 255}), number_attr_or(node, "fill-opacity", 1.0));
}

void draw_text(cv::Mat3b& canvas, const pt::ptree& node, double scale) {
  std::string text = node.get_value<std::string>();
  // Hershey fonts only cover ASCII
  for (auto& c : text) {
    if (static_cast<unsigned char>(c) >= 0x80 || static_cast<unsigned char>(c) < 0x20) c = '?';
  }
  if (text.empty()) return;
  const double x = number_attr(node, "x") * scale;
  const double y = number_attr(node, "y") * scale;
  const double size = number_attr_or(node, "font-size", 16.0) * scale;
  const bool bold = node.get<std::string>("<xmlattr>.font-weight", "normal") == "bold";
  const Rgba color = color_attr(node, "fill", Rgba{0, 0, 0, 255});

  constexpr int face = cv::FONT_HERSHEY_SIMPLEX;
  // cap height is roughly 0.7 em
  const double font_scale = cv::getFontScaleFromHeight(face, std::max(1, static_cast<int>(std::lround(0.7 * size))));
  const int thickness = std::max(1, static_cast<int>(std::lround(size / 14.0))) + (bold ? 1 : 0);
  int baseline = 0;
  const cv::Size extent = cv::getTextSize(text, face, font_scale, thickness, &baseline);
  const cv::Point origin(static_cast<int>(std::lround(x - extent.width / 2.0)),
                         static_cast<int>(std::lround(y + extent.height / 2.0)));
  cv::Mat1b mask(canvas.size(), 0);
  cv::putText(mask, text, origin, face, font_scale, cv::Scalar(255), thickness, cv::LINE_AA);
  blend(canvas, mask, color, 1.0);
}

cv::Mat3b to_mat(const Image& image) {
  cv::Mat3b mat(image.height, image.width);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const auto* p = &image.rgb[(static_cast<std::size_t>(y) * image.width + x) * 3];
      mat(y, x) = cv::Vec3b(p[2], p[1], p[0]);
    }
  }
  return mat;
}

Image from_mat(const cv::Mat3b& mat) {
  Image image{mat.cols, mat.rows, {}};
  image.rgb.resize(static_cast<std::size_t>(mat.cols) * mat.rows * 3);
  for (int y = 0; y < mat.rows; ++y) {
    for (int x = 0; x < mat.cols; ++x) {
      const auto& v = mat(y, x);
      auto* p = &image.rgb[(static_cast<std::size_t>(y) * mat.cols + x) * 3];
      p[0] = v[2];
      p[1] = v[1];
      p[2] = v[0];
    }
  }
  return image;
}

}  // namespace

Rgba Image::pixel(int x, int y) const {
  const auto* p = &rgb[(static_cast<std::size_t>(y) * width + x) * 3];
  return {p[0], p[1], p[2], 255};
}

Image rasterize(std::string_view svg, double pixel_scale) {
  if (!(pixel_scale > 0.0)) throw RenderError("pixel scale must be positive");
  pt::ptree doc;
  try {
    std::istringstream in{std::string(svg)};
    pt::read_xml(in, doc);
  } catch (const pt::ptree_error& e) {
    throw RenderError(std::string("invalid vector document: ") + e.what());
  }
  const auto root = doc.get_child_optional("svg");
  if (!root) throw RenderError("invalid vector document: no <svg> root");

  const int width = static_cast<int>(std::lround(number_attr(*root, "width") * pixel_scale));
  const int height = static_cast<int>(std::lround(number_attr(*root, "height") * pixel_scale));
  if (width <= 0 || height <= 0 || width > 32768 || height > 32768)
    throw RenderError("invalid vector document: unsupported canvas size");

  cv::Mat3b canvas(height, width, cv::Vec3b(255, 255, 255));
  for (const auto& [tag, node] : *root) {
    if (tag == "rect")
      draw_rect(canvas, node, pixel_scale);
    else if (tag == "circle")
      draw_circle(canvas, node, pixel_scale);
    else if (tag == "text")
      draw_text(canvas, node, pixel_scale);
    else if (tag != "<xmlattr>" && tag != "<xmlcomment>")
      throw RenderError("unsupported element <" + tag + ">");
  }
  return from_mat(canvas);
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  std::vector<std::uint8_t> bytes;
  if (!cv::imencode(".png", to_mat(image), bytes, {cv::IMWRITE_PNG_COMPRESSION, 6}))
    throw RenderError("PNG encoding failed");
  return bytes;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  const cv::Mat buffer(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
  cv::Mat decoded = cv::imdecode(buffer, cv::IMREAD_COLOR);
  if (decoded.empty()) throw RenderError("PNG decoding failed");
  return from_mat(decoded);
}

std::vector<std::uint8_t> rasterize_png(std::string_view svg, double pixel_scale) {
  return encode_png(rasterize(svg, pixel_scale));
}

}  // namespace venn::render
