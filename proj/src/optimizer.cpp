#include "venn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace venn::optimizer {

namespace {

bool finite(std::span<const Point> positions) {
  return std::all_of(positions.begin(), positions.end(),
                     [](Point p) { return std::isfinite(p.x) && std::isfinite(p.y); });
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unit direction used to separate coincident centers. Seed 0 gives +x.
Point tie_direction(std::uint64_t seed) {
  if (seed == 0) return {1.0, 0.0};
  const double u = static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53;
  const double angle = 2.0 * geometry::kPi * u;
  return {std::cos(angle), std::sin(angle)};
}

double sign(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

void revert_to_best(LayoutState& state) {
  state.positions = state.best.positions;
  state.loss = state.best.loss;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::running: return "running";
    case Status::converged: return "converged";
    case Status::stopped_by_user: return "stopped_by_user";
    case Status::reverted_after_rises: return "reverted_after_rises";
    case Status::epoch_limit: return "epoch_limit";
  }
  return "unknown";
}

std::string_view to_string(LossKind k) {
  return k == LossKind::absolute ? "absolute" : "squared";
}

LossKind parse_loss_kind(std::string_view text) {
  if (text == "absolute") return LossKind::absolute;
  if (text == "squared") return LossKind::squared;
  throw InputError("unknown loss kind '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (max_epochs < 1) throw InputError("max_epochs must be at least 1");
  if (!(loss_threshold > 0.0)) throw InputError("loss threshold must be positive");
  if (!(canvas.width > 0.0) || !(canvas.height > 0.0)) throw InputError("canvas must have positive size");
}

std::vector<int> placement_order(const geometry::CircleModel& model) {
  const int n = model.size();
  std::vector<int> order;
  if (n == 0) return order;
  std::vector<bool> placed(n, false);

  int current = 0;
  for (int i = 1; i < n; ++i) {
    if (model.radii[i] > model.radii[current]) current = i;
  }
  order.push_back(current);
  placed[current] = true;

  while (static_cast<int>(order.size()) < n) {
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (placed[j]) continue;
      if (next < 0 || model.target[current][j] < model.target[current][next]) next = j;
    }
    order.push_back(next);
    placed[next] = true;
    current = next;
  }
  return order;
}

Positions initial_positions(std::span<const int> order, Canvas canvas, const geometry::CircleModel& model) {
  const auto n = static_cast<int>(order.size());
  Positions positions(model.size());
  const double ring = std::min(canvas.width, canvas.height) / 4.0;
  const Point center{canvas.width / 2.0, canvas.height / 2.0};
  for (int k = 0; k < n; ++k) {
    const double degrees = 90.0 - 360.0 * k / n;
    const double a = degrees * geometry::kPi / 180.0;
    positions[order[k]] = {center.x + ring * std::cos(a), center.y + ring * std::sin(a)};
  }
  return positions;
}

double loss(std::span<const Point> positions, const geometry::CircleModel& model, LossKind kind) {
  const auto n = positions.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double e = distance(positions[i], positions[j]) - model.target[i][j];
      total += kind == LossKind::squared ? e * e : std::abs(e);
    }
  }
  return total;
}

Positions loss_gradient(std::span<const Point> positions, const geometry::CircleModel& model,
                        LossKind kind, std::uint64_t seed) {
  const auto n = positions.size();
  Positions grad(n);
  const Point tie = tie_direction(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point delta = positions[i] - positions[j];
      const double d = std::hypot(delta.x, delta.y);
      const double e = d - model.target[i][j];
      const double weight = kind == LossKind::squared ? 2.0 * e : sign(e);
      // unit vector from j towards i
      const Point u = d > 0.0 ? (1.0 / d) * delta : tie;
      grad[i] = grad[i] + weight * u;
      grad[j] = grad[j] - weight * u;
    }
  }
  return grad;
}

double initial_learning_rate(int n) { return 10.0 * n; }

double next_learning_rate(double loss, int n) { return std::min(loss / (10.0 * n), kMaxLearningRate); }

LayoutState initialize(const geometry::CircleModel& model, const RunConfig& config) {
  config.validate();
  LayoutState state;
  state.positions = initial_positions(placement_order(model), config.canvas, model);
  state.loss = loss(state.positions, model, config.loss);
  state.lr = initial_learning_rate(model.size());
  state.best = {state.positions, state.loss, 0};
  return state;
}

void record_epoch(LayoutState& state, Positions positions, double new_loss, int n) {
  state.rise_count = new_loss > state.loss ? std::min(state.rise_count + 1, kMaxRises) : 0;
  state.positions = std::move(positions);
  state.loss = new_loss;
  state.lr = next_learning_rate(new_loss, n);
  ++state.epoch;
  if (new_loss < state.best.loss) state.best = {state.positions, new_loss, state.epoch};
}

bool apply_stop_rules(LayoutState& state, const RunConfig& config, bool stop_requested) {
  if (state.status != Status::running) return true;
  if (state.loss < config.loss_threshold) {
    state.status = Status::converged;
  } else if (state.rise_count >= kMaxRises) {
    state.status = Status::reverted_after_rises;
  } else if (stop_requested) {
    state.status = Status::stopped_by_user;
  } else if (state.epoch >= config.max_epochs) {
    state.status = Status::epoch_limit;
  } else {
    return false;
  }
  if (state.status != Status::converged) revert_to_best(state);
  return true;
}

LayoutState epoch_step(const LayoutState& state, const geometry::CircleModel& model, const RunConfig& config) {
  const Positions grad = loss_gradient(state.positions, model, config.loss, config.seed);
  Positions moved(state.positions.size());
  double new_loss = 0.0;
  double step = state.lr;
  bool ok = false;
  for (int halvings = 0; halvings <= kMaxHalvings && !ok; ++halvings, step *= 0.5) {
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = state.positions[i] - step * grad[i];
    new_loss = loss(moved, model, config.loss);
    ok = finite(moved) && std::isfinite(new_loss);
  }
  if (!ok) throw DivergenceError("layout diverged at epoch " + std::to_string(state.epoch + 1));

  LayoutState next = state;
  record_epoch(next, std::move(moved), new_loss, model.size());
  return next;
}

LayoutState run(const geometry::CircleModel& model, const RunConfig& config, const StopSignal* stop,
                const EpochCallback& on_epoch) {
  auto stop_requested = [stop] { return stop != nullptr && stop->raised(); };
  LayoutState state = initialize(model, config);
  if (apply_stop_rules(state, config, stop_requested())) return state;
  while (true) {
    state = epoch_step(state, model, config);
    const bool done = apply_stop_rules(state, config, false);
    if (on_epoch) on_epoch(state);
    if (done) return state;
    // a stop raised by the callback takes effect before the next epoch
    if (apply_stop_rules(state, config, stop_requested())) return state;
  }
}

geometry::CircleModel build_model(const setops::RegionTable& table, Canvas canvas) {
  std::vector<std::size_t> sizes;
  for (int i = 0; i < table.n; ++i) sizes.push_back(table.set_size(i));
  const double largest_radius = std::min(canvas.width, canvas.height) / 4.0;
  const double scale = geometry::area_scale_for(*std::max_element(sizes.begin(), sizes.end()), largest_radius);
  return geometry::target_distance_matrix(table, sizes, scale);
}

Session::Session(geometry::CircleModel model, RunConfig config)
    : model_(std::move(model)), config_(config), state_(initialize(model_, config_)) {
  apply_stop_rules(state_, config_, false);
}

Session Session::from_sets(std::span<const setops::IdSet> sets, const RunConfig& config) {
  return Session(build_model(setops::build_region_table(sets), config.canvas), config);
}

std::vector<EpochRecord> Session::step(int k) {
  std::vector<EpochRecord> trace;
  for (int i = 0; i < k && !finished(); ++i) {
    if (apply_stop_rules(state_, config_, stop_.raised())) break;
    state_ = epoch_step(state_, model_, config_);
    trace.push_back({state_.epoch, state_.loss, state_.lr});
    apply_stop_rules(state_, config_, stop_.raised());
  }
  // a stop raised after the last epoch of a batch still takes effect
  if (!finished()) apply_stop_rules(state_, config_, stop_.raised());
  return trace;
}

}  // namespace venn::optimizer
