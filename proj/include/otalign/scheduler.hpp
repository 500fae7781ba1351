#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "otalign/common.hpp"

namespace otalign {

struct SchedulerConfig {
  double rho = 0.1;   // EMA rate, in (0, 1]
  double beta = 0.5;  // exploration weight, > 0
  double tau = 0.2;   // softmax temperature, > 0
};

/// UCB utility Q + beta * sqrt(log t / max(1, n)).
double ucb_utility(double q, long n, double t, double beta);

// Online reward-guided selection over a candidate layer set: EMA reward
// tracking, UCB utilities, temperature-softmax sampling. Sequential by
// nature; one logical owner mutates state.
class LayerScheduler {
 public:
  LayerScheduler(std::vector<int> layer_ids, SchedulerConfig config,
                 uint64_t seed);

  /// Loss decrease as reward; non-finite input is an error.
  static double compute_reward(double prev_loss, double curr_loss);
  /// First-activation base case: no previous loss yields zero reward.
  static double compute_reward(std::optional<double> prev_loss,
                               double curr_loss);

  /// EMA update for one layer; bumps its count and the global step.
  void update(int layer, double reward);

  Vector utilities() const;

  /// Softmax of utilities at temperature tau; always sums to 1.
  Vector sample_distribution() const;

  /// Draws one layer from sample_distribution with the seeded generator.
  int select();

  const std::vector<int>& layer_ids() const { return ids_; }
  long step() const { return step_; }
  double q(int layer) const { return q_[index_of(layer)]; }
  long count(int layer) const { return counts_[index_of(layer)]; }
  const SchedulerConfig& config() const { return config_; }

  // Loss bookkeeping for reward computation in training loops.
  std::optional<double> last_loss(int layer) const { return last_loss_[index_of(layer)]; }
  void set_last_loss(int layer, double loss) { last_loss_[index_of(layer)] = loss; }

  /// Checkpoint record: ids, Q, n, last losses, t, hyperparameters, seed,
  /// and the generator state for exact resume.
  nlohmann::json to_json() const;
  static LayerScheduler from_json(const nlohmann::json& j);

 private:
  int index_of(int layer) const;

  std::vector<int> ids_;
  Vector q_;
  std::vector<long> counts_;
  std::vector<std::optional<double>> last_loss_;
  long step_ = 1;
  SchedulerConfig config_;
  uint64_t seed_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace otalign
