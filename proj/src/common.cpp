#include "otalign/common.hpp"

#include <cmath>
#include <cstdio>

namespace otalign {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t base, uint64_t stream) {
  uint64_t state = base ^ (0xA0761D6478BD642FULL * (stream + 1));
  splitmix64(state);
  return splitmix64(state);
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw ValidationError("uniform_int: hi < lo");
  const int span = hi - lo + 1;
  int v = lo + static_cast<int>(uniform01() * span);
  return v > hi ? hi : v;
}

double Rng::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vector Rng::normal_vector(int dim, double sigma) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = sigma * normal();
  return v;
}

Matrix Rng::normal_matrix(int rows, int cols, double sigma) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = sigma * normal();
  return m;
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = uniform_int(0, i);
    std::swap(p[i], p[j]);
  }
  return p;
}

std::string fmt_g(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
  return buf;
}

}  // namespace otalign
