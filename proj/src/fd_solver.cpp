#include "stq/fd_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "stq/errors.hpp"

namespace stq {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

SpMat hamiltonian(double g, double b, double mu, int m, double h, double L) {
  // m interior nodes per axis; index = iy * m + ix.
  const double kin = 0.5 / (h * h);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(m) * m * 5);
  for (int iy = 0; iy < m; ++iy) {
    const double y = -L + (iy + 1) * h;
    for (int ix = 0; ix < m; ++ix) {
      const double x = -L + (ix + 1) * h;
      const int k = iy * m + ix;
      const double v = g * g * (0.5 * (x * x + b * b * y * y) + mu * x * x * y * y);
      trip.emplace_back(k, k, 4.0 * kin + v);
      if (ix > 0) trip.emplace_back(k, k - 1, -kin);
      if (ix + 1 < m) trip.emplace_back(k, k + 1, -kin);
      if (iy > 0) trip.emplace_back(k, k - m, -kin);
      if (iy + 1 < m) trip.emplace_back(k, k + m, -kin);
    }
  }
  SpMat H(m * m, m * m);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

}  // namespace

GridSolve fd_single_grid(double g, double b, double mu, int n, double L, const GridConfig& cfg) {
  if (!(g > 0) || !(b > 0)) throw InvalidArgument("fd: g and b must be positive");
  if (mu < 0) throw InvalidArgument("fd: mu must be >= 0");
  if (n < 5) throw InvalidArgument("fd: need at least 5 grid points per axis");
  if (!(L > 0)) throw InvalidArgument("fd: half width must be positive");
  const int m = n - 2;
  const double h = 2.0 * L / (n - 1);
  const SpMat H = hamiltonian(g, b, mu, m, h, L);

  SpMat A = H;
  if (cfg.shift != 0.0) {
    SpMat I(A.rows(), A.cols());
    I.setIdentity();
    A -= cfg.shift * I;
  }
  Eigen::SimplicialLDLT<SpMat> solver(A);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("fd: factorization failed");

  // Harmonic ground state as the starting vector.
  Vec psi(m * m);
  for (int iy = 0; iy < m; ++iy) {
    const double y = -L + (iy + 1) * h;
    for (int ix = 0; ix < m; ++ix) {
      const double x = -L + (ix + 1) * h;
      psi[iy * m + ix] = std::exp(-0.5 * g * (x * x + b * y * y));
    }
  }
  psi.normalize();

  GridSolve out;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    psi = solver.solve(psi);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("fd: linear solve failed");
    psi.normalize();
    const Vec hp = H * psi;
    const double e = psi.dot(hp);
    const double r = (hp - e * psi).norm();
    out.energy = e;
    out.residual = r;
    out.iterations = it;
    if (r <= cfg.tolerance) break;
  }
  if (!(out.residual <= cfg.tolerance)) {
    throw ConvergenceFailure("fd: residual " + std::to_string(out.residual) + " above tolerance after " +
                             std::to_string(cfg.max_iterations) + " iterations");
  }
  if (psi.sum() < 0) psi = -psi;

  out.psi.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) out.psi[(iy + 1) * n + ix + 1] = psi[iy * m + ix];
  }
  return out;
}

double richardson_extrapolate(const std::vector<double>& e) {
  if (e.empty()) throw InvalidArgument("richardson: empty ladder");
  std::vector<double> t = e;
  double factor = 1.0;
  for (std::size_t k = 1; k < e.size(); ++k) {
    factor *= 4.0;
    for (std::size_t i = 0; i + k < e.size(); ++i) t[i] = (factor * t[i + 1] - t[i]) / (factor - 1.0);
  }
  return t[0];
}

SpectralEstimate fd_ground_state(double g, double b, double mu, const GridConfig& cfg) {
  if (cfg.richardson_levels < 1) throw InvalidArgument("fd: richardson_levels must be >= 1");
  const double L = cfg.half_width > 0 ? cfg.half_width : 6.0 / std::sqrt(g * std::min(1.0, b));
  SpectralEstimate est;
  est.nx = est.ny = cfg.points;
  est.lx = est.ly = L;
  int n = cfg.points;
  for (int level = 0; level < cfg.richardson_levels; ++level) {
    GridSolve s = fd_single_grid(g, b, mu, n, L, cfg);
    est.grid_energies.push_back(s.energy);
    est.residual = std::max(est.residual, s.residual);
    if (level == 0) est.psi_samples = std::move(s.psi);
    n = 2 * n - 1;
  }
  est.energy = richardson_extrapolate(est.grid_energies);
  return est;
}

}  // namespace stq
