#pragma once

#include "photoncount/fockspace.hpp"

namespace pcs {

// The two quantum-jump superoperator families. SD uses the bosonic
// annihilation operator a; E uses the normalized lowering operator
// E = (n+1)^{-1/2} a. gamma is the count rate constant (1/time) and by
// the usual calibration gamma_sd = gamma_e equates the one-photon Fock
// absorption rates of the two models.
enum class JumpKind { SD, E };

struct JumpModel {
  JumpKind kind;
  double gamma;
};

// Event-weighted state: Hermitian, PSD, trace in [0, 1]. The trace is
// the probability weight of the event that produced it.
struct UnnormalizedDensity {
  Matrix rho;

  double weight() const { return rho.trace().real(); }
};

Matrix lowering_op(JumpKind kind, int dim);

// J rho = gamma A rho A^dag; its trace is the one-count rate.
UnnormalizedDensity one_count_map(const JumpModel& model,
                                  const DensityMatrix& rho);

// gamma * nbar (SD) or gamma * (1 - p_0) (E), computed from the photon
// distribution directly so it can cross-check the map trace.
double one_count_rate(const JumpModel& model, const DensityMatrix& rho);

// Normalized state immediately after a count. Throws ConditioningError
// when the count rate vanishes.
DensityMatrix post_one_count(const JumpModel& model, const DensityMatrix& rho);

// No-count propagator over an interval tau, applied in closed form as
// entrywise exponential weights. omega0 is the free field frequency;
// the default 0 is the rotating frame.
UnnormalizedDensity no_count_map(const JumpModel& model,
                                 const DensityMatrix& rho, double tau,
                                 double omega0 = 0.0);

// Survival probability of a count-free interval tau, from the photon
// distribution: sum_n exp(-gamma n tau) p_n (SD) or
// p_0 + (1 - p_0) exp(-gamma tau) (E).
double no_count_probability(const JumpModel& model, const DensityMatrix& rho,
                            double tau);

// Normalized state conditioned on no count in [t, t+tau].
DensityMatrix post_no_count(const JumpModel& model, const DensityMatrix& rho,
                            double tau, double omega0 = 0.0);

enum class FieldKind { Fock, Thermal, Coherent, Superposition };

// Closed-form post-count mean photon number and vacuum probability for
// the canonical fields. For Fock inputs nbar is the (integer) level m.
struct Table1Entry {
  double mean_after;
  double vacuum_after;
};

// Closed-form count rate, conditional rate after one count, and
// immediate second-order coherence degree. For Fock |1> the post-count
// state is vacuum, so the conditional rate and g2 are 0 in both models;
// the familiar entries gamma and 1 for the E model hold for m >= 2.
struct Table2Entry {
  double rate;
  double conditional_rate;
  double g2;
};

Table1Entry table1_oracle(JumpKind kind, FieldKind field, double nbar);
Table2Entry table2_oracle(const JumpModel& model, FieldKind field, double nbar);

}  // namespace pcs
