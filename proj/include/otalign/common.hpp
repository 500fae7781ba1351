#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace otalign {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Invalid user input: bad configs, malformed files, contract violations.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: diverged training, non-finite intermediate values.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

uint64_t splitmix64(uint64_t& state);

/// Derives an independent stream seed from a base seed and a stream index.
uint64_t derive_seed(uint64_t base, uint64_t stream);

// Seeded generator with hand-rolled sampling methods. <random> distribution
// objects are implementation-defined, so all draws go through uniform64()
// to keep generated data identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t uniform64() { return engine_(); }

  /// Uniform double in (0, 1].
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  /// Standard normal via Box-Muller (one value per call).
  double normal();

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  Vector normal_vector(int dim, double sigma = 1.0);
  Matrix normal_matrix(int rows, int cols, double sigma = 1.0);

  /// Fisher-Yates shuffle of [0, n).
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
};

/// Formats a double with %.{precision}g. precision=17 round-trips exactly.
std::string fmt_g(double value, int precision);

}  // namespace otalign
