#pragma once

#include "stq/graded_poly.hpp"
#include "stq/series_solution.hpp"
#include "stq/trajectory.hpp"

namespace stq {

// Truncation knobs for the perturbative pipelines: parameter power and the
// deepest 1/g power kept in gS (exponential) or chi (polynomial).
struct ExpansionOrders {
  int order = 2;
  int depth = 5;
};

// Depth at which a flavor covers the same content as the mu hierarchy at
// (order, mu_depth): eps needs mu_depth + 2 order, lambda mu_depth + order.
int matching_depth(Param flavor, int order, int mu_depth = 1);

// Harmonic S0 = 1/2 (x^2 + b y^2) with the perturbation entering the
// hierarchy at g^0 (eps) or g^1 (lambda).
SeriesSolution solve_exponential(const PotentialSpec& spec, Param flavor, ExpansionOrders orders);

// chi = 1 + sum_k g^{-k} chi_k on top of exp(-g S0 - S1).
SeriesSolution solve_polynomial(const PotentialSpec& spec, Param flavor, ExpansionOrders orders);

// chi_N = sum_k (-1)^k / k! sum_{i_1+..+i_k = N+k} S_{i_1} ... S_{i_k}.
SeriesSolution exp_to_poly(const SeriesSolution& sol);

// Inverse map: S_{k+1} collected from -log chi.
SeriesSolution poly_to_exp(const SeriesSolution& sol);

// Re-expresses a solution in another parameter (eps = g^2 mu,
// lambda = g mu). The result is always exponential kind.
SeriesSolution normalize_grading(const SeriesSolution& sol, Param target);

// Polynomial-hierarchy residuals in (x, y): entry k is
// grad S0 . grad chi_k minus its right-hand side, for k = 1..K.
std::vector<GradedPoly> polynomial_pde_residuals(const SeriesSolution& sol, const PotentialSpec& spec);

}  // namespace stq
