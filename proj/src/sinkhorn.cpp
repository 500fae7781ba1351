#include "otalign/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace otalign {

namespace {

double logsumexp_row(const Matrix& m, int row) {
  const double mx = m.row(row).maxCoeff();
  double s = 0.0;
  for (int j = 0; j < m.cols(); ++j) s += std::exp(m(row, j) - mx);
  return mx + std::log(s);
}

double logsumexp_col(const Matrix& m, int col) {
  const double mx = m.col(col).maxCoeff();
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += std::exp(m(i, col) - mx);
  return mx + std::log(s);
}

double plan_entropy_sum(const Matrix& z) {
  double s = 0.0;
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) {
      const double v = z(i, j);
      if (v > 0.0) s += v * std::log(v);
    }
  return s;
}

}  // namespace

CostMatrix cosine_cost(const TokenSequence& a, const TokenSequence& b) {
  check_token_sequence(a);
  check_token_sequence(b);
  if (a.dim() != b.dim())
    throw ValidationError("cosine_cost: embedding dims differ (" +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");

  const auto ia = a.valid_indices();
  const auto ib = b.valid_indices();

  std::vector<double> norm_a(ia.size()), norm_b(ib.size());
  for (size_t k = 0; k < ia.size(); ++k) {
    norm_a[k] = a.embeddings.row(ia[k]).norm();
    if (norm_a[k] == 0.0)
      throw ValidationError("cosine_cost: zero-norm valid token at index " +
                            std::to_string(ia[k]) + " of first sequence");
  }
  for (size_t k = 0; k < ib.size(); ++k) {
    norm_b[k] = b.embeddings.row(ib[k]).norm();
    if (norm_b[k] == 0.0)
      throw ValidationError("cosine_cost: zero-norm valid token at index " +
                            std::to_string(ib[k]) + " of second sequence");
  }

  CostMatrix cost;
  cost.values.resize(static_cast<int>(ia.size()), static_cast<int>(ib.size()));
  for (size_t i = 0; i < ia.size(); ++i)
    for (size_t j = 0; j < ib.size(); ++j) {
      const double dot = a.embeddings.row(ia[i]).dot(b.embeddings.row(ib[j]));
      cost.values(static_cast<int>(i), static_cast<int>(j)) =
          1.0 - dot / (norm_a[i] * norm_b[j]);
    }
  return cost;
}

SinkhornResult sinkhorn_solve(const CostMatrix& cost, double epsilon,
                              const SinkhornOptions& opts) {
  if (epsilon <= 0.0)
    throw ValidationError("sinkhorn_solve: epsilon must be positive");
  if (!cost.values.allFinite())
    throw ValidationError("sinkhorn_solve: non-finite cost entries");
  const int n = cost.rows();
  const int m = cost.cols();
  if (n == 0 || m == 0)
    throw ValidationError("sinkhorn_solve: empty cost matrix");

  const double log_r = -std::log(static_cast<double>(n));
  const double log_c = -std::log(static_cast<double>(m));

  // Scaled duals: log Z_ij = phi_i + psi_j - C_ij / epsilon.
  const Matrix neg_cost_eps = -cost.values / epsilon;
  Vector phi = Vector::Zero(n);
  Vector psi = Vector::Zero(m);

  SinkhornResult result;
  result.epsilon = epsilon;
  result.plan.row_marginal = Vector::Constant(n, 1.0 / n);
  result.plan.col_marginal = Vector::Constant(m, 1.0 / m);

  Matrix work(n, m);
  Matrix plan(n, m);
  double violation = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < opts.max_iter) {
    ++it;
    // Row update: make row sums exact.
    work = neg_cost_eps;
    work.rowwise() += psi.transpose();
    for (int i = 0; i < n; ++i) phi[i] = log_r - logsumexp_row(work, i);
    // Column update: make column sums exact.
    work = neg_cost_eps;
    work.colwise() += phi;
    for (int j = 0; j < m; ++j) psi[j] = log_c - logsumexp_col(work, j);

    work.rowwise() += psi.transpose();
    plan = work.array().exp();

    double v = 0.0;
    for (int i = 0; i < n; ++i)
      v = std::max(v, std::abs(plan.row(i).sum() - 1.0 / n));
    for (int j = 0; j < m; ++j)
      v = std::max(v, std::abs(plan.col(j).sum() - 1.0 / m));
    violation = v;
    if (violation < opts.tol) {
      result.converged = true;
      break;
    }
  }

  result.iterations = it;
  result.plan.values = plan;
  result.transport_cost = (plan.array() * cost.values.array()).sum();
  result.entropy_term = epsilon * plan_entropy_sum(plan);
  result.objective = result.transport_cost + result.entropy_term;
  return result;
}

double ot_objective(const SinkhornResult& result, const CostMatrix& cost,
                    double epsilon) {
  const Matrix& z = result.plan.values;
  if (z.rows() != cost.rows() || z.cols() != cost.cols())
    throw ValidationError("ot_objective: plan and cost dims differ");
  const double transport = (z.array() * cost.values.array()).sum();
  return transport + epsilon * plan_entropy_sum(z);
}

double ot_objective(const SinkhornResult& result, const CostMatrix& cost) {
  return ot_objective(result, cost, result.epsilon);
}

std::pair<Matrix, Matrix> ot_grad(const TokenSequence& a,
                                  const TokenSequence& b,
                                  const SinkhornResult& result) {
  if (!result.converged)
    throw ValidationError("ot_grad: solver did not converge; gradient quality not guaranteed");
  const auto ia = a.valid_indices();
  const auto ib = b.valid_indices();
  const Matrix& z = result.plan.values;
  if (z.rows() != static_cast<int>(ia.size()) ||
      z.cols() != static_cast<int>(ib.size()))
    throw ValidationError("ot_grad: plan dims do not match valid token counts");

  Matrix grad_a = Matrix::Zero(a.length(), a.dim());
  Matrix grad_b = Matrix::Zero(b.length(), b.dim());

  for (size_t i = 0; i < ia.size(); ++i) {
    const auto u = a.embeddings.row(ia[i]);
    const double nu = u.norm();
    for (size_t j = 0; j < ib.size(); ++j) {
      const auto v = b.embeddings.row(ib[j]);
      const double nv = v.norm();
      const double w = z(static_cast<int>(i), static_cast<int>(j));
      if (w == 0.0) continue;
      const double dot = u.dot(v);
      const double inv = 1.0 / (nu * nv);
      // d/du [1 - <u,v>/(|u||v|)] = -v/(|u||v|) + <u,v> u/(|u|^3 |v|)
      grad_a.row(ia[i]) += w * (-v * inv + (dot * inv / (nu * nu)) * u);
      grad_b.row(ib[j]) += w * (-u * inv + (dot * inv / (nv * nv)) * v);
    }
  }
  return {std::move(grad_a), std::move(grad_b)};
}

double exact_ot_bruteforce(const CostMatrix& cost) {
  const int n = cost.rows();
  if (n != cost.cols())
    throw ValidationError("exact_ot_bruteforce: cost must be square");
  if (n > 8)
    throw ValidationError("exact_ot_bruteforce: n > 8 not supported");
  if (n == 0) throw ValidationError("exact_ot_bruteforce: empty cost");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost.values(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / n;
}

}  // namespace otalign
