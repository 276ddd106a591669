#pragma once

#include <vector>

#include "photoncount/jump_models.hpp"

namespace pcs {

struct TimeGrid {
  double t0;
  double t1;
  int steps;  // uniform grid with steps+1 output points
};

void check_grid(const TimeGrid& grid);

struct EvolveOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  bool store_states = false;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> photon_probs;  // diagonal at each output time
  std::vector<double> mean_photon;
  std::vector<double> vacuum_prob;
  std::vector<double> trace_residual;
  std::vector<DensityMatrix> states;  // filled when store_states is set
};

// Lindblad generator gamma (A rho A^dag - 1/2 {A^dag A, rho}) in the
// rotating frame; traceless and Hermitian.
Matrix lindblad_rhs(const JumpModel& model, const Matrix& rho);

// Unconditioned propagation by classical RK4 with step doubling for
// local error control. Throws NumericError if the controller stalls or
// the trace drifts beyond 1e-9.
EvolutionResult evolve(const JumpModel& model, const DensityMatrix& rho0,
                       const TimeGrid& grid, const EvolveOptions& opts = {});

double sd_mean_closed_form(double nbar0, double gamma, double t);

// Count rate immediately after a count: one_count_rate(post_one_count).
double conditional_rate(const JumpModel& model, const DensityMatrix& rho);

// g2(t, t+) = conditional rate / unconditional rate at coincident times.
double g2_immediate(const JumpModel& model, const DensityMatrix& rho);

}  // namespace pcs
