#pragma once

#include <utility>

#include "otalign/types.hpp"

namespace otalign {

/// Ground-cost matrix over the valid tokens of two sequences.
/// Entries lie in [0, 2] when built from cosine distance.
struct CostMatrix {
  Matrix values;  // n x m, n = valid tokens of the first sequence

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
};

/// Nonnegative coupling whose row/column sums match the prescribed marginals.
struct TransportPlan {
  Matrix values;         // n x m, entries >= 0, total mass 1
  Vector row_marginal;   // length n, sums to 1
  Vector col_marginal;   // length m, sums to 1
};

struct SinkhornResult {
  TransportPlan plan;
  double transport_cost = 0.0;  // sum_ij Z_ij c_ij
  double entropy_term = 0.0;    // epsilon * sum_ij Z_ij log Z_ij
  double objective = 0.0;       // transport_cost + entropy_term
  int iterations = 0;
  bool converged = false;
  double epsilon = 0.0;
};

struct SinkhornOptions {
  int max_iter = 500;
  double tol = 1e-6;  // L-inf marginal violation
};

/// Pairwise cosine distance 1 - <u,v>/(|u||v|) over valid tokens only.
/// A zero-norm valid token is an error naming the offending index.
CostMatrix cosine_cost(const TokenSequence& a, const TokenSequence& b);

/// Entropy-regularized OT with uniform marginals over valid tokens, solved
/// by alternating dual updates in the log domain (stable for small epsilon).
/// Stops when the L-inf marginal violation drops below tol or max_iter is
/// reached; non-convergence is reported through the flag, not an error.
SinkhornResult sinkhorn_solve(const CostMatrix& cost, double epsilon,
                              const SinkhornOptions& opts = {});

/// Evaluates sum Z c + epsilon * sum Z log Z for the result's plan against
/// the given cost, with 0 log 0 := 0.
double ot_objective(const SinkhornResult& result, const CostMatrix& cost,
                    double epsilon);
double ot_objective(const SinkhornResult& result, const CostMatrix& cost);

/// Gradient of the entropic OT objective with respect to both embedding
/// matrices. Uses the fixed-plan (envelope) gradient dL/dc_ij = Z_ij chained
/// through the cosine-cost derivative; rows of masked tokens are zero.
/// Requires a converged result.
std::pair<Matrix, Matrix> ot_grad(const TokenSequence& a,
                                  const TokenSequence& b,
                                  const SinkhornResult& result);

/// Exact unregularized OT value under uniform marginals for square costs,
/// (1/n) * min over permutations of the assignment cost. Test oracle;
/// n = m <= 8 enforced.
double exact_ot_bruteforce(const CostMatrix& cost);

}  // namespace otalign
