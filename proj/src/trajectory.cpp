#include "stq/trajectory.hpp"

#include "stq/errors.hpp"

namespace stq {

void PotentialSpec::validate() const {
  if (b <= 0) throw InvalidArgument("potential: b must be positive");
  if (U.max_ep() > 0) throw InvalidArgument("potential: U must not carry parameter powers");
  if (U.has_constant_term()) throw InvalidArgument("potential: U must not have a constant term");
  if (!U.all_exponents_even()) throw InvalidArgument("potential: U must be even in x and y");
  for (const auto& [m, c] : U.terms()) {
    if (m.gp != 0) throw InvalidArgument("potential: U must not carry powers of g");
  }
}

PotentialSpec PotentialSpec::quartic_coupling(const Rational& b, Param flavor) {
  return PotentialSpec{b, GradedPoly::monomial(1, 2, 2, 0, 0, flavor), flavor};
}

ExpSum Trajectory::x() const {
  ExpSum s(b);
  for (const auto& e : x_series) s += e;
  return s;
}

ExpSum Trajectory::y() const {
  ExpSum s(b);
  for (const auto& e : y_series) s += e;
  return s;
}

namespace {

// Particular solution of z'' - w^2 z = forcing, forcing built from growing
// exponentials, raised to parameter order `ep`.
ExpSum particular_solution(const ExpSum& forcing, const Rational& omega_sq, int ep, const char* axis) {
  ExpSum out(forcing.b(), forcing.param());
  for (const auto& [key, c] : forcing.terms()) {
    const Rational s = forcing.rate(key);
    const Rational denom = s * s - omega_sq;
    if (denom == 0) {
      throw ResonantDenominator(std::string("trajectory: driving term resonant with the homogeneous ") + axis +
                                " mode");
    }
    ExpKey k2 = key;
    k2.ep = ep;
    out.add_term(k2, c / denom);
  }
  return out;
}

}  // namespace

Trajectory solve_classical_trajectory(const PotentialSpec& spec, int order) {
  spec.validate();
  if (order < 0) throw InvalidArgument("trajectory order must be >= 0");
  const int n_max = spec.flavor == Param::mu ? order : 0;

  Trajectory traj;
  traj.b = spec.b;
  traj.order = n_max;
  traj.x_series.push_back(ExpSum::term(1, ExpKey{0, 0, 1, 0, 1, 0}, spec.b));
  traj.y_series.push_back(ExpSum::term(1, ExpKey{0, 0, 0, 1, 0, 1}, spec.b));

  const GradedPoly dUdx = spec.U.with_param(Param::mu).derivative_x();
  const GradedPoly dUdy = spec.U.with_param(Param::mu).derivative_y();
  for (int n = 1; n <= n_max; ++n) {
    // mu * dU/dx contributes at mu^n through the mu^{n-1} part of dU/dx.
    const ExpSum fx = restrict_to_trajectory(dUdx, traj.x_series, traj.y_series, n - 1).param_order(n - 1);
    const ExpSum fy = restrict_to_trajectory(dUdy, traj.x_series, traj.y_series, n - 1).param_order(n - 1);
    traj.x_series.push_back(particular_solution(fx, 1, n, "x"));
    traj.y_series.push_back(particular_solution(fy, Rational(spec.b * spec.b), n, "y"));
  }
  return traj;
}

Trajectory invert_endpoint_constants(Trajectory traj) {
  const GradedPoly x = GradedPoly::x();
  const GradedPoly y = GradedPoly::y();
  GradedPoly cx = x;
  GradedPoly cy = y;
  // Each pass fixes one more order of mu.
  for (int pass = 0; pass < traj.order; ++pass) {
    GradedPoly nx = x;
    GradedPoly ny = y;
    for (int n = 1; n <= traj.order; ++n) {
      nx -= evaluate_at_endpoint(traj.x_series[n], cx, cy, traj.order);
      ny -= evaluate_at_endpoint(traj.y_series[n], cx, cy, traj.order);
    }
    cx = std::move(nx);
    cy = std::move(ny);
  }
  traj.cx_hat = std::move(cx);
  traj.cy_hat = std::move(cy);
  traj.inverted = true;
  return traj;
}

std::pair<GradedPoly, GradedPoly> endpoint_round_trip(const Trajectory& traj) {
  return {evaluate_at_endpoint(traj.x(), traj, traj.order), evaluate_at_endpoint(traj.y(), traj, traj.order)};
}

ExpSum restrict_to_trajectory(const GradedPoly& p, const Trajectory& traj, int max_ep) {
  return restrict_to_trajectory(p, traj.x_series, traj.y_series, max_ep);
}

GradedPoly evaluate_at_endpoint(const ExpSum& e, const Trajectory& traj, int max_ep) {
  if (!traj.inverted) throw InvalidArgument("evaluate_at_endpoint: endpoint constants not inverted");
  return evaluate_at_endpoint(e, traj.cx_hat, traj.cy_hat, max_ep);
}

namespace {

ExpSum kinetic_along(const Trajectory& traj, int max_ep) {
  const ExpSum xd = traj.x().derivative_t();
  const ExpSum yd = traj.y().derivative_t();
  return (ExpSum::multiply(xd, xd, max_ep) + ExpSum::multiply(yd, yd, max_ep)) * Rational(1, 2);
}

ExpSum potential_along(const PotentialSpec& spec, const Trajectory& traj, int max_ep) {
  const ExpSum x = traj.x();
  const ExpSum y = traj.y();
  const Rational b2 = spec.b * spec.b;
  ExpSum v = (ExpSum::multiply(x, x, max_ep) + b2 * ExpSum::multiply(y, y, max_ep)) * Rational(1, 2);
  if (spec.flavor == Param::mu && max_ep != 0) {
    const int room = max_ep < 0 ? -1 : max_ep - 1;
    v += restrict_to_trajectory(spec.U.with_param(Param::mu), traj, room).shifted(0, 1);
  }
  return v;
}

}  // namespace

GradedPoly action_integral(const PotentialSpec& spec, const Trajectory& traj) {
  const int n = traj.order;
  const ExpSum lagrangian = kinetic_along(traj, n) + potential_along(spec, traj, n);
  return evaluate_at_endpoint(integrate_to_T(lagrangian), traj, n);
}

ExpSum energy_conservation_residual(const PotentialSpec& spec, const Trajectory& traj, int max_ep) {
  const int n = max_ep < 0 ? traj.order + 1 : max_ep;
  return kinetic_along(traj, n) - potential_along(spec, traj, n);
}

std::pair<ExpSum, ExpSum> equation_of_motion_residual(const PotentialSpec& spec, const Trajectory& traj) {
  const int n = traj.order;
  ExpSum rx = traj.x().derivative_t().derivative_t() - traj.x();
  const Rational b2 = spec.b * spec.b;
  ExpSum ry = traj.y().derivative_t().derivative_t() - b2 * traj.y();
  if (spec.flavor == Param::mu && n > 0) {
    const GradedPoly u = spec.U.with_param(Param::mu);
    rx -= restrict_to_trajectory(u.derivative_x(), traj, n - 1).shifted(0, 1);
    ry -= restrict_to_trajectory(u.derivative_y(), traj, n - 1).shifted(0, 1);
  }
  return {rx.truncated(n), ry.truncated(n)};
}

}  // namespace stq
