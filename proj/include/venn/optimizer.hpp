#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "venn/common.hpp"
#include "venn/geometry.hpp"
#include "venn/setops.hpp"

namespace venn::optimizer {

inline constexpr int kMaxRises = 5;
inline constexpr double kMaxLearningRate = 100.0;
inline constexpr int kMaxHalvings = 40;

enum class Status { running, converged, stopped_by_user, reverted_after_rises, epoch_limit };

std::string_view to_string(Status s);

// How the per-pair mismatch between observed and target distance enters the loss.
enum class LossKind {
  absolute,  // sum of |d - t|
  squared,   // sum of (d - t)^2
};

std::string_view to_string(LossKind k);
LossKind parse_loss_kind(std::string_view text);

struct Canvas {
  double width = 800.0;
  double height = 800.0;
};

struct RunConfig {
  std::uint64_t seed = 0;
  int max_epochs = 20000;
  double loss_threshold = 1.0;
  Canvas canvas;
  LossKind loss = LossKind::absolute;

  void validate() const;
};

using Positions = std::vector<Point>;

struct Snapshot {
  Positions positions;
  double loss = 0.0;
  int epoch = 0;
};

struct LayoutState {
  Positions positions;
  int epoch = 0;
  double loss = 0.0;
  double lr = 0.0;
  int rise_count = 0;
  Snapshot best;
  Status status = Status::running;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double lr = 0.0;
};

// Monotonic flag: once raised it stays raised. Checked between epochs.
class StopSignal {
 public:
  void raise() noexcept { raised_.store(true, std::memory_order_relaxed); }
  bool raised() const noexcept { return raised_.load(std::memory_order_relaxed); }

 private:
  std::atomic<bool> raised_{false};
};

// Largest circle first, then repeatedly the unplaced circle closest (by target) to the last pick.
std::vector<int> placement_order(const geometry::CircleModel& model);

// Ring of radius min(w,h)/4 about the canvas center; k-th circle of `order` at 90 - 360k/n degrees.
Positions initial_positions(std::span<const int> order, Canvas canvas, const geometry::CircleModel& model);

double loss(std::span<const Point> positions, const geometry::CircleModel& model,
            LossKind kind = LossKind::absolute);

Positions loss_gradient(std::span<const Point> positions, const geometry::CircleModel& model,
                        LossKind kind = LossKind::absolute, std::uint64_t seed = 0);

double initial_learning_rate(int n);
// Rate for the epoch that follows an epoch ending at `loss`.
double next_learning_rate(double loss, int n);

LayoutState initialize(const geometry::CircleModel& model, const RunConfig& config);

// Bookkeeping after an epoch produced `positions` with `new_loss`: rise counter, best snapshot,
// schedule, epoch counter. Kept separate from the gradient step so the stop rules can be driven
// by arbitrary loss traces.
void record_epoch(LayoutState& state, Positions positions, double new_loss, int n);

// Sets a terminal status (reverting to the best snapshot where required) if a stop rule fires.
// Returns true when the state is no longer running.
bool apply_stop_rules(LayoutState& state, const RunConfig& config, bool stop_requested);

// One full-batch gradient update followed by record_epoch. Throws DivergenceError.
LayoutState epoch_step(const LayoutState& state, const geometry::CircleModel& model, const RunConfig& config);

using EpochCallback = std::function<void(const LayoutState&)>;

LayoutState run(const geometry::CircleModel& model, const RunConfig& config,
                const StopSignal* stop = nullptr, const EpochCallback& on_epoch = {});

// Incremental driver for interactive front ends: initialize, step k epochs at a time, stop.
class Session {
 public:
  Session(geometry::CircleModel model, RunConfig config);

  // Builds the region table and circle model from deduped sets, scaled to the canvas.
  static Session from_sets(std::span<const setops::IdSet> sets, const RunConfig& config);

  // Runs up to k epochs; returns the per-epoch trace. No-op once finished.
  std::vector<EpochRecord> step(int k);
  void raise_stop() { stop_.raise(); }
  bool finished() const { return state_.status != Status::running; }

  const LayoutState& state() const { return state_; }
  const geometry::CircleModel& model() const { return model_; }
  const RunConfig& config() const { return config_; }

 private:
  geometry::CircleModel model_;
  RunConfig config_;
  LayoutState state_;
  StopSignal stop_;
};

// Circle model for the sets: largest radius = min(width, height) / 4.
geometry::CircleModel build_model(const setops::RegionTable& table, Canvas canvas);

}  // namespace venn::optimizer
