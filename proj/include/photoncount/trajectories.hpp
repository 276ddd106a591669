#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "photoncount/evolution.hpp"

namespace pcs {

// Independent reproducible substream per trajectory: the engine state is
// a hash of (seed, stream_index), so parallel and serial runs agree.
struct RngStream {
  std::uint64_t seed;
  std::uint64_t stream_index;
};

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 make_engine(const RngStream& stream);
double uniform_open(std::mt19937_64& engine);  // u in (0, 1)

// Inverts the survival probability S(tau) = u. Returns nullopt when no
// jump happens before t_max. The E model and pure Fock states invert
// analytically; otherwise bisection plus a Newton polish on the strictly
// decreasing survival function, to 1e-12 * t_max.
std::optional<double> sample_waiting_time(const JumpModel& model,
                                          const DensityMatrix& rho, double u,
                                          double t_max);

struct TrajectoryRecord {
  std::uint64_t stream_index;
  std::vector<double> jump_times;
  DensityMatrix final_state;
  std::vector<std::pair<double, DensityMatrix>> snapshots;
};

// Alternates post_no_count between jumps with post_one_count at each
// jump; the trailing count-free interval is propagated too. Snapshots,
// when requested, are the conditioned states at the grid times.
TrajectoryRecord run_trajectory(const JumpModel& model,
                                const DensityMatrix& rho0,
                                const TimeGrid& grid, const RngStream& stream,
                                bool keep_snapshots = false);

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mean_photon;
  std::vector<double> mean_photon_se;
  Eigen::MatrixXd pn_estimates;            // (grid points) x dim
  std::map<long, double> count_histogram;  // jump count -> frequency
  std::vector<double> first_jump_times;    // sorted, censored at t1
  long n_traj = 0;
};

EnsembleStats ensemble(const JumpModel& model, const DensityMatrix& rho0,
                       const TimeGrid& grid, long n_traj, std::uint64_t seed);

struct G2Estimate {
  double value;
  double std_error;
  long coincidences;
  long singles;
  bool low_statistics;  // fewer than 100 coincidences
};

// Coincidence-window estimator of g2(t, t+): trajectories run over a
// duration of 5 windows, ordered jump pairs closer than the window are
// counted, and the estimate is normalized by the empirical singles rate.
G2Estimate mc_g2(const JumpModel& model, const DensityMatrix& rho0,
                 double window, long n_traj, std::uint64_t seed);

}  // namespace pcs
