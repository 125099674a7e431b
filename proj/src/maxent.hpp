#pragma once

#include <Eigen/Dense>

#include "distribution.hpp"
#include "entropy.hpp"

namespace qent {

// Estimate the latent eigenvalue distribution p (length n) from dephased
// observations: alpha(i, j) = |<f_i|g_j>|^2 couples latent level i to observed
// outcome j, and q (length m <= n) carries the observed weights.
struct MaxEntProblem {
  Distribution q;
  Eigen::MatrixXd alpha;  // n x m
  EntropyMeasure measure = EntropyMeasure::von_neumann();
  LogBase base = LogBase::Two;
};

struct MaxEntSolution {
  Eigen::VectorXd p;
  double objective = 0.0;
  // Multiplier on the merged data constraint (relaxed solver) and on the
  // normalization, in the exp(-gamma_norm - gamma_data * alpha') gauge.
  double gamma_norm = 0.0;
  double gamma_data = 0.0;
  // One multiplier per observed outcome (full solver; zeros elsewhere).
  Eigen::VectorXd multipliers;
  double residual_constraint = 0.0;
  double residual_norm = 0.0;
  int dropped_outcomes = 0;
  int iterations = 0;
  bool converged = false;
};

// Single merged constraint sum_i p_i alpha'_i = m_retained with
// alpha'_i = sum_j alpha(i,j)/q_j over the retained (q_j > 0) outcomes.
// Closed-form exponential / generalized-Pareto family plus one
// one-dimensional root bracket.
MaxEntSolution solve_maxent_relaxed(const MaxEntProblem& prob);

// All m constraints enforced. Dual Newton for von Neumann; projected
// concave ascent with Dykstra projections for the power families.
MaxEntSolution solve_maxent_full(const MaxEntProblem& prob, double tol = 1e-10,
                                 int max_iter = 400);

// Independent oracle: exhaustive simplex grid restricted to the constraint
// slab, feasibility repair by alternating projections, then derivative-free
// pattern search along the constraint nullspace (no gradients, no duals).
// Latent dimension capped at 4.
MaxEntSolution brute_force_maxent(const MaxEntProblem& prob, int resolution = 400,
                                  double refine_tol = 1e-10);

}  // namespace qent
