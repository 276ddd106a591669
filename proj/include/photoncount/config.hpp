#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photoncount/trajectories.hpp"

namespace pcs {

struct FieldSpec {
  FieldKind kind = FieldKind::Thermal;
  int m = 1;          // Fock level
  double nbar = 1.0;  // thermal/coherent mean
  std::vector<std::pair<int, Complex>> terms;  // superposition amplitudes

  DensityMatrix build(int dim, double tail_tol) const;
  // Closed-form oracles only exist for Fock/thermal/coherent; for those
  // this is the nbar (or level) argument they take.
  double oracle_nbar() const;
};

// One experiment description. Times are in the same unit as 1/gamma;
// CSV output reports gamma*t.
struct SimConfig {
  JumpKind model = JumpKind::SD;
  double gamma = 1.0;
  int dim = 128;
  double tail_tol = 1e-12;
  FieldSpec field;
  TimeGrid grid{0.0, 3.0, 30};
  long n_traj = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> outputs;

  // per-command sections
  std::vector<double> table_nbars{0.5, 1.0, 2.0, 4.0};
  std::vector<int> table_fock_ms{1, 2, 3, 4};
  double derive_omega = 1.0;
  double derive_dt = 1e-2;
  double g2_window = 0.01;

  static SimConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

}  // namespace pcs
