#include "venn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace venn::cli {

namespace {

using json = nlohmann::ordered_json;

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream file(path, std::ios::binary);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw InputError("cannot write '" + path + "'");
}

json names_json(Mask mask, std::span<const setops::IdSet> sets) { return setops::member_names(mask, sets); }

}  // namespace

SetInput parse_set_flag(const std::string& value) {
  const auto eq = value.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == value.size())
    throw UsageError("--set expects NAME=PATH[:#RRGGBB], got '" + value + "'");
  SetInput in{value.substr(0, eq), value.substr(eq + 1), std::nullopt};
  if (const auto hash = in.path.rfind(":#"); hash != std::string::npos) {
    const std::string color = in.path.substr(hash + 1);
    static const std::regex hex("#[0-9A-Fa-f]{6}");
    if (!std::regex_match(color, hex)) throw UsageError("malformed color '" + color + "' in --set " + value);
    in.color = Rgba::parse(color);
    in.path.erase(hash);
    if (in.path.empty()) throw UsageError("--set " + value + " has no path");
  }
  return in;
}

std::optional<CliConfig> parse_cli(std::span<const std::string> args, std::ostream& out) {
  CliConfig config;
  std::vector<std::string> set_flags;
  std::string labels = "absolute";
  std::string background = "#FFFFFF";
  std::string loss = "absolute";

  CLI::App app{"Area-proportional Venn/Euler diagrams from identifier lists", "venn"};
  app.add_option("--set", set_flags, "Input set as NAME=PATH[:#RRGGBB]; repeat 2-10 times")->required();
  app.add_option("--title", config.title, "Main title");
  app.add_option("--subtitle", config.subtitle, "Subtitle");
  app.add_option("--labels", labels, "Region labels")
      ->check(CLI::IsMember({"absolute", "percent", "none"}));
  app.add_option("--bg", background, "Background color #RRGGBB");
  app.add_option("--width", config.width, "Canvas width")->check(CLI::PositiveNumber);
  app.add_option("--height", config.height, "Canvas height")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Seed");
  app.add_option("--max-epochs", config.max_epochs, "Epoch cap")->check(CLI::Range(1, 100000000));
  app.add_option("--segments", config.segments, "Vertices per circle when extracting regions")
      ->check(CLI::Range(geometry::kMinSegments, 65536));
  app.add_option("--precision", config.precision, "Label placement precision")->check(CLI::PositiveNumber);
  app.add_option("--loss", loss, "Pairwise loss form")->check(CLI::IsMember({"absolute", "squared"}));
  app.add_option("--out", config.svg_path, "SVG output path");
  app.add_option("--png", config.png_path, "PNG output path");
  app.add_option("--regions", config.regions_path, "JSON region report path");
  app.add_flag("--quiet", config.quiet, "No progress output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& flag : set_flags) config.inputs.push_back(parse_set_flag(flag));
  const auto n = static_cast<int>(config.inputs.size());
  if (n < kMinSets || n > kMaxSets)
    throw UsageError("expected two to ten --set flags, got " + std::to_string(n));
  try {
    config.background = Rgba::parse(background);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  config.label_mode = render::parse_label_mode(labels);
  config.loss = optimizer::parse_loss_kind(loss);

  std::vector<std::string> outputs;
  for (const auto* p : {&config.svg_path, &config.png_path, &config.regions_path}) {
    if (!p->empty()) outputs.push_back(*p);
  }
  if (outputs.empty()) throw UsageError("at least one of --out, --png, --regions is required");
  if (std::set<std::string>(outputs.begin(), outputs.end()).size() != outputs.size())
    throw UsageError("output paths must be distinct");
  return config;
}

setops::IdList read_id_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot read '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  if (file.bad()) throw InputError("cannot read '" + path + "'");
  return setops::parse_id_list(text.str());
}

std::string dump_regions(std::span<const setops::IdSet> sets, const setops::RegionTable& table,
                         const geometry::CircleModel& model, const optimizer::LayoutState& layout) {
  json doc;
  json set_list = json::array();
  for (const auto& s : sets) set_list.push_back({{"name", s.name}, {"size", s.ids.size()}});
  doc["sets"] = std::move(set_list);
  doc["union_size"] = table.union_size;

  std::vector<Mask> masks;
  for (const auto& [mask, ids] : table.exclusive) {
    if (!ids.empty()) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end(), setops::display_order);
  json regions = json::array();
  for (Mask m : masks) {
    const auto& ids = table.exclusive.at(m);
    regions.push_back({{"sets", names_json(m, sets)}, {"exclusive_count", ids.size()}, {"ids", ids}});
  }
  doc["regions"] = std::move(regions);

  masks.clear();
  for (const auto& [mask, ids] : table.inclusive) {
    if (!ids.empty()) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end(), setops::display_order);
  json intersections = json::array();
  for (Mask m : masks) {
    const auto& ids = table.inclusive.at(m);
    intersections.push_back({{"sets", names_json(m, sets)},
                             {"count", ids.size()},
                             {"ids", ids},
                             {"pruned", !table.is_displayed(m)}});
  }
  doc["intersections"] = std::move(intersections);

  json circles = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    circles.push_back({{"name", sets[i].name},
                       {"x", layout.positions[i].x},
                       {"y", layout.positions[i].y},
                       {"r", model.radii[i]}});
  }
  doc["layout"] = {{"circles", std::move(circles)},
                   {"loss", layout.loss},
                   {"epochs", layout.epoch},
                   {"stop_reason", optimizer::to_string(layout.status)}};
  return doc.dump(2) + "\n";
}

int run_pipeline(const CliConfig& config, std::ostream& out, std::ostream& err, const optimizer::StopSignal* stop) {
  try {
    std::vector<setops::IdSet> sets;
    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
      const auto& in = config.inputs[i];
      const Rgba color = in.color.value_or(render::default_color(static_cast<int>(i)));
      sets.push_back(setops::make_id_set(in.name, color, read_id_file(in.path)));
    }
    const auto table = setops::build_region_table(sets);

    optimizer::RunConfig run_config;
    run_config.seed = config.seed;
    run_config.max_epochs = config.max_epochs;
    run_config.canvas = {config.width, config.height};
    run_config.loss = config.loss;
    const auto model = optimizer::build_model(table, run_config.canvas);

    optimizer::EpochCallback progress;
    if (!config.quiet) {
      progress = [&err](const optimizer::LayoutState& s) {
        err << "epoch=" << s.epoch << " loss=" << format_fixed(s.loss) << " lr=" << format_fixed(s.lr) << '\n';
      };
    }
    const auto layout = optimizer::run(model, run_config, stop, progress);
    if (!config.quiet) {
      err << "status=" << optimizer::to_string(layout.status) << " epochs=" << layout.epoch
          << " loss=" << format_fixed(layout.loss) << '\n';
    }

    render::DiagramConfig diagram;
    diagram.title = config.title;
    diagram.subtitle = config.subtitle;
    diagram.label_mode = config.label_mode;
    diagram.background = config.background;
    diagram.width = config.width;
    diagram.height = config.height;
    diagram.segments = config.segments;
    diagram.precision = config.precision;
    for (const auto& s : sets) {
      diagram.set_names.push_back(s.name);
      diagram.set_colors.push_back(s.color);
    }

    if (!config.svg_path.empty() || !config.png_path.empty()) {
      const std::string svg = render::render_svg(layout, model, table, diagram);
      if (!config.svg_path.empty()) {
        write_file(config.svg_path, svg);
        out << "wrote " << config.svg_path << '\n';
      }
      if (!config.png_path.empty()) {
        const auto png = render::rasterize_png(svg, 1.0);
        write_file(config.png_path, {reinterpret_cast<const char*>(png.data()), png.size()});
        out << "wrote " << config.png_path << '\n';
      }
    }
    if (!config.regions_path.empty()) {
      write_file(config.regions_path, dump_regions(sets, table, model, layout));
      out << "wrote " << config.regions_path << '\n';
    }
    return kExitOk;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace venn::cli
