#include "photoncount/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcs {

void check_grid(const TimeGrid& grid) {
  if (!(grid.t1 > grid.t0)) throw ConfigError("time grid needs t1 > t0");
  if (grid.steps < 1) throw ConfigError("time grid needs at least one step");
}

Matrix lindblad_rhs(const JumpModel& model, const Matrix& rho) {
  const int dim = static_cast<int>(rho.rows());
  const Matrix a = lowering_op(model.kind, dim);
  const Matrix na = a.adjoint() * a;
  return model.gamma *
         (a * rho * a.adjoint() - 0.5 * (na * rho + rho * na));
}

namespace {

// One classical RK4 step for the (time-independent) generator.
Matrix rk4_step(const Matrix& rho, double h, const Matrix& a,
                const Matrix& na, double gamma) {
  auto rhs = [&](const Matrix& r) -> Matrix {
    return gamma * (a * r * a.adjoint() - 0.5 * (na * r + r * na));
  };
  const Matrix k1 = rhs(rho);
  const Matrix k2 = rhs(rho + 0.5 * h * k1);
  const Matrix k3 = rhs(rho + 0.5 * h * k2);
  const Matrix k4 = rhs(rho + h * k3);
  return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

EvolutionResult evolve(const JumpModel& model, const DensityMatrix& rho0,
                       const TimeGrid& grid, const EvolveOptions& opts) {
  check_grid(grid);
  const int dim = rho0.dim();
  const Matrix a = lowering_op(model.kind, dim);
  const Matrix na = a.adjoint() * a;
  const double span = grid.t1 - grid.t0;

  EvolutionResult out;
  out.times.reserve(grid.steps + 1);

  Matrix rho = rho0.rho;
  double h = span / (20.0 * grid.steps);  // initial guess, controller adapts

  auto record = [&](double t) {
    DensityMatrix s{rho, rho0.tail_mass};
    out.times.push_back(t);
    out.photon_probs.push_back(photon_distribution(s));
    out.mean_photon.push_back(mean_photon(s));
    out.vacuum_prob.push_back(out.photon_probs.back()(0));
    const double tr = rho.trace().real();
    out.trace_residual.push_back(std::abs(tr - 1.0));
    if (std::abs(tr - 1.0) > 1e-9) {
      throw NumericError("evolve: trace drifted to " + std::to_string(tr) +
                         " at t = " + std::to_string(t));
    }
    if (opts.store_states) out.states.push_back(std::move(s));
  };

  record(grid.t0);
  for (int k = 1; k <= grid.steps; ++k) {
    const double target = grid.t0 + span * double(k) / grid.steps;
    double t = out.times.back();
    while (t < target) {
      const double hs = std::min(h, target - t);
      const Matrix full = rk4_step(rho, hs, a, na, model.gamma);
      const Matrix half = rk4_step(
          rk4_step(rho, 0.5 * hs, a, na, model.gamma), 0.5 * hs, a, na,
          model.gamma);
      const double err = (full - half).cwiseAbs().maxCoeff() / 15.0;
      const double scale =
          opts.abs_tol + opts.rel_tol * rho.cwiseAbs().maxCoeff();
      if (err <= scale) {
        rho = half + (half - full) / 15.0;  // local extrapolation
        t += hs;
      }
      const double ratio = err > 0.0 ? std::pow(scale / err, 0.2) : 5.0;
      h = hs * std::clamp(0.9 * ratio, 0.2, 5.0);
      if (h < 1e-14 * span) {
        throw NumericError(
            "evolve: step size collapsed at t = " + std::to_string(t));
      }
    }
    record(target);
  }
  return out;
}

double sd_mean_closed_form(double nbar0, double gamma, double t) {
  if (!(nbar0 >= 0.0) || !(t >= 0.0)) {
    throw ConfigError("sd_mean_closed_form needs nbar0 >= 0 and t >= 0");
  }
  return nbar0 * std::exp(-gamma * t);
}

double conditional_rate(const JumpModel& model, const DensityMatrix& rho) {
  return one_count_rate(model, post_one_count(model, rho));
}

double g2_immediate(const JumpModel& model, const DensityMatrix& rho) {
  const double rate = one_count_rate(model, rho);
  if (!(rate > 0.0)) {
    throw ConditioningError("g2_immediate: count rate is zero");
  }
  return conditional_rate(model, rho) / rate;
}

}  // namespace pcs
