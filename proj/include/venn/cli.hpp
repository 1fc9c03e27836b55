#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "venn/common.hpp"
#include "venn/geometry.hpp"
#include "venn/optimizer.hpp"
#include "venn/render.hpp"
#include "venn/setops.hpp"

namespace venn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDivergence = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct SetInput {
  std::string name;
  std::string path;
  std::optional<Rgba> color;
};

struct CliConfig {
  std::vector<SetInput> inputs;
  std::string title;
  std::string subtitle;
  render::LabelMode label_mode = render::LabelMode::absolute;
  Rgba background{255, 255, 255, 255};
  double width = 800.0;
  double height = 800.0;
  std::uint64_t seed = 0;
  int max_epochs = 20000;
  int segments = geometry::kDefaultSegments;
  double precision = geometry::kDefaultPrecision;
  optimizer::LossKind loss = optimizer::LossKind::absolute;
  std::string svg_path;
  std::string png_path;
  std::string regions_path;
  bool quiet = false;
};

// Parses NAME=PATH[:#RRGGBB].
SetInput parse_set_flag(const std::string& value);

// Returns nullopt after printing help to `out`. Throws UsageError on bad flags.
std::optional<CliConfig> parse_cli(std::span<const std::string> args, std::ostream& out);

// Reads one input file into an ID list. Throws InputError when unreadable.
setops::IdList read_id_file(const std::string& path);

// JSON report of sets, exclusive regions, inclusive intersections and the final layout.
std::string dump_regions(std::span<const setops::IdSet> sets, const setops::RegionTable& table,
                         const geometry::CircleModel& model, const optimizer::LayoutState& layout);

// Whole pipeline. Progress goes to `err`, file confirmations to `out`.
int run_pipeline(const CliConfig& config, std::ostream& out, std::ostream& err,
                 const optimizer::StopSignal* stop = nullptr);

}  // namespace venn::cli
