#include "otalign/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace otalign {

double ucb_utility(double q, long n, double t, double beta) {
  const long denom = std::max(1L, n);
  return q + beta * std::sqrt(std::log(t) / static_cast<double>(denom));
}

LayerScheduler::LayerScheduler(std::vector<int> layer_ids,
                               SchedulerConfig config, uint64_t seed)
    : ids_(std::move(layer_ids)), config_(config), seed_(seed), engine_(seed) {
  if (ids_.empty())
    throw ValidationError("layer scheduler: empty candidate set");
  if (config_.rho <= 0.0 || config_.rho > 1.0)
    throw ValidationError("layer scheduler: rho must be in (0, 1]");
  if (config_.beta <= 0.0)
    throw ValidationError("layer scheduler: beta must be positive");
  if (config_.tau <= 0.0)
    throw ValidationError("layer scheduler: tau must be positive");
  for (size_t i = 0; i < ids_.size(); ++i)
    for (size_t j = i + 1; j < ids_.size(); ++j)
      if (ids_[i] == ids_[j])
        throw ValidationError("layer scheduler: duplicate layer id " +
                              std::to_string(ids_[i]));
  q_ = Vector::Zero(static_cast<int>(ids_.size()));
  counts_.assign(ids_.size(), 0);
  last_loss_.assign(ids_.size(), std::nullopt);
}

double LayerScheduler::compute_reward(double prev_loss, double curr_loss) {
  if (!std::isfinite(prev_loss) || !std::isfinite(curr_loss))
    throw ValidationError("compute_reward: non-finite loss");
  return prev_loss - curr_loss;
}

double LayerScheduler::compute_reward(std::optional<double> prev_loss,
                                      double curr_loss) {
  if (!prev_loss.has_value()) {
    if (!std::isfinite(curr_loss))
      throw ValidationError("compute_reward: non-finite loss");
    return 0.0;
  }
  return compute_reward(*prev_loss, curr_loss);
}

int LayerScheduler::index_of(int layer) const {
  for (size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == layer) return static_cast<int>(i);
  throw ValidationError("layer scheduler: unknown layer " + std::to_string(layer));
}

void LayerScheduler::update(int layer, double reward) {
  if (!std::isfinite(reward))
    throw ValidationError("layer scheduler: non-finite reward");
  const int i = index_of(layer);
  q_[i] = (1.0 - config_.rho) * q_[i] + config_.rho * reward;
  counts_[i] += 1;
  step_ += 1;
}

Vector LayerScheduler::utilities() const {
  Vector u(q_.size());
  for (int i = 0; i < q_.size(); ++i)
    u[i] = ucb_utility(q_[i], counts_[i], static_cast<double>(step_),
                       config_.beta);
  return u;
}

Vector LayerScheduler::sample_distribution() const {
  Vector u = utilities() / config_.tau;
  const double mx = u.maxCoeff();
  Vector p(u.size());
  double sum = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    p[i] = std::exp(u[i] - mx);
    sum += p[i];
  }
  return p / sum;
}

int LayerScheduler::select() {
  const Vector p = sample_distribution();
  const double draw =
      static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  double cum = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    cum += p[i];
    if (draw <= cum) return ids_[static_cast<size_t>(i)];
  }
  return ids_.back();
}

nlohmann::json LayerScheduler::to_json() const {
  nlohmann::json j;
  j["layer_ids"] = ids_;
  j["q"] = std::vector<double>(q_.data(), q_.data() + q_.size());
  j["counts"] = counts_;
  std::vector<nlohmann::json> last;
  for (const auto& v : last_loss_)
    last.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
  j["last_loss"] = last;
  j["step"] = step_;
  j["rho"] = config_.rho;
  j["beta"] = config_.beta;
  j["tau"] = config_.tau;
  j["seed"] = seed_;
  std::ostringstream rng;
  rng << engine_;
  j["rng_state"] = rng.str();
  return j;
}

LayerScheduler LayerScheduler::from_json(const nlohmann::json& j) {
  SchedulerConfig cfg;
  cfg.rho = j.at("rho").get<double>();
  cfg.beta = j.at("beta").get<double>();
  cfg.tau = j.at("tau").get<double>();
  LayerScheduler s(j.at("layer_ids").get<std::vector<int>>(), cfg,
                   j.at("seed").get<uint64_t>());
  const auto q = j.at("q").get<std::vector<double>>();
  if (q.size() != s.ids_.size())
    throw ValidationError("layer scheduler: q size mismatch in checkpoint");
  for (size_t i = 0; i < q.size(); ++i) s.q_[static_cast<int>(i)] = q[i];
  s.counts_ = j.at("counts").get<std::vector<long>>();
  if (s.counts_.size() != s.ids_.size())
    throw ValidationError("layer scheduler: counts size mismatch in checkpoint");
  const auto& last = j.at("last_loss");
  if (last.size() != s.ids_.size())
    throw ValidationError("layer scheduler: last_loss size mismatch in checkpoint");
  for (size_t i = 0; i < last.size(); ++i)
    s.last_loss_[i] = last[i].is_null()
                          ? std::nullopt
                          : std::optional<double>(last[i].get<double>());
  s.step_ = j.at("step").get<long>();
  if (j.contains("rng_state")) {
    std::istringstream rng(j.at("rng_state").get<std::string>());
    rng >> s.engine_;
    if (rng.fail())
      throw ValidationError("layer scheduler: bad rng state in checkpoint");
  }
  return s;
}

}  // namespace otalign
