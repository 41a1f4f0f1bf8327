#pragma once

#include <vector>

namespace stq {

struct GridConfig {
  int points = 81;           // coarsest grid per axis, boundary nodes included
  double half_width = 0.0;   // <= 0: 6 / sqrt(g min(1, b))
  int richardson_levels = 3; // grids n, 2n-1, 4n-3, ...; 1 = single grid
  double shift = 0.0;        // inverse-iteration shift
  double tolerance = 1e-10;  // on ||H psi - E psi|| with ||psi|| = 1
  int max_iterations = 500;
};

struct SpectralEstimate {
  double energy = 0.0;        // extrapolated when richardson_levels > 1
  int nx = 0;
  int ny = 0;
  double lx = 0.0;            // half-widths
  double ly = 0.0;
  double residual = 0.0;      // worst over the ladder
  std::vector<double> grid_energies;  // raw energy per ladder grid, coarse to fine
  std::vector<double> psi_samples;    // coarsest grid, row-major in y, unit discrete norm
};

struct GridSolve {
  double energy = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> psi;  // interior + boundary nodes, row-major
};

// Smallest eigenpair of -1/2 lap + g^2 [1/2 (x^2 + b^2 y^2) + mu x^2 y^2] on
// [-L, L]^2 with Dirichlet walls, 5-point stencil, n x n nodes.
GridSolve fd_single_grid(double g, double b, double mu, int n, double half_width, const GridConfig& cfg);

// Richardson table for an h^2 expansion: T_{i,k} = (4^k T_{i+1,k-1} - T_{i,k-1}) / (4^k - 1).
double richardson_extrapolate(const std::vector<double>& energies_coarse_to_fine);

SpectralEstimate fd_ground_state(double g, double b, double mu, const GridConfig& cfg = {});

}  // namespace stq
