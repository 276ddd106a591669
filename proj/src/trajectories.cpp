#include "photoncount/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcs {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(const RngStream& stream) {
  const std::uint64_t s =
      splitmix64(splitmix64(stream.seed) ^
                 splitmix64(stream.stream_index + 0x5851f42d4c957f2dULL));
  return std::mt19937_64(s);
}

double uniform_open(std::mt19937_64& engine) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double u = dist(engine);
  while (u <= 0.0) u = dist(engine);  // exclude exact 0
  return u;
}

std::optional<double> sample_waiting_time(const JumpModel& model,
                                          const DensityMatrix& rho, double u,
                                          double t_max) {
  if (!(u > 0.0 && u < 1.0)) throw ConfigError("u must lie in (0, 1)");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  const double g = model.gamma;
  const Eigen::VectorXd p = photon_distribution(rho);

  if (no_count_probability(model, rho, t_max) >= u) return std::nullopt;

  if (model.kind == JumpKind::E) {
    const double p0 = p(0);
    return std::min(t_max, -std::log((u - p0) / (1.0 - p0)) / g);
  }

  // Pure Fock fast path: survival e^{-gamma m tau}.
  int nonzero = 0, level = 0;
  for (int n = 0; n < p.size(); ++n) {
    if (p(n) > 1e-15) {
      ++nonzero;
      level = n;
    }
  }
  if (nonzero == 1) return std::min(t_max, -std::log(u) / (g * level));

  auto survival = [&](double tau) {
    double s = 0.0;
    for (int n = 0; n < p.size(); ++n) s += p(n) * std::exp(-g * n * tau);
    return s;
  };
  auto slope = [&](double tau) {
    double s = 0.0;
    for (int n = 0; n < p.size(); ++n)
      s -= g * n * p(n) * std::exp(-g * n * tau);
    return s;
  };

  double lo = 0.0, hi = t_max;
  for (int it = 0; it < 60 && (hi - lo) > 1e-13 * t_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (survival(mid) >= u ? lo : hi) = mid;
  }
  double tau = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double ds = slope(tau);
    if (ds == 0.0) break;
    tau -= (survival(tau) - u) / ds;
    tau = std::clamp(tau, lo, hi);
  }
  return tau;
}

TrajectoryRecord run_trajectory(const JumpModel& model,
                                const DensityMatrix& rho0,
                                const TimeGrid& grid, const RngStream& stream,
                                bool keep_snapshots) {
  check_grid(grid);
  std::mt19937_64 engine = make_engine(stream);

  TrajectoryRecord rec;
  rec.stream_index = stream.stream_index;

  const double span = grid.t1 - grid.t0;
  DensityMatrix state = rho0;  // state at segment start seg_t
  double seg_t = grid.t0;
  int next_grid = 0;

  auto snapshot_until = [&](double limit) {
    while (next_grid <= grid.steps) {
      const double tg = grid.t0 + span * double(next_grid) / grid.steps;
      if (tg > limit) break;
      DensityMatrix s =
          tg > seg_t ? post_no_count(model, state, tg - seg_t) : state;
      if (keep_snapshots) rec.snapshots.emplace_back(tg, s);
      ++next_grid;
    }
  };

  while (seg_t < grid.t1) {
    const double u = uniform_open(engine);
    const auto tau = sample_waiting_time(model, state, u, grid.t1 - seg_t);
    if (!tau) {
      snapshot_until(grid.t1);
      state = post_no_count(model, state, grid.t1 - seg_t);
      seg_t = grid.t1;
      break;
    }
    const double t_jump = seg_t + *tau;
    snapshot_until(std::min(t_jump, grid.t1));
    state = post_one_count(model, post_no_count(model, state, *tau));
    seg_t = t_jump;
    rec.jump_times.push_back(t_jump);
  }
  snapshot_until(grid.t1);
  rec.final_state = std::move(state);
  return rec;
}

EnsembleStats ensemble(const JumpModel& model, const DensityMatrix& rho0,
                       const TimeGrid& grid, long n_traj, std::uint64_t seed) {
  check_grid(grid);
  if (n_traj < 1) throw ConfigError("n_traj must be >= 1");
  const int npts = grid.steps + 1;
  const int dim = rho0.dim();

  EnsembleStats stats;
  stats.n_traj = n_traj;
  stats.times.resize(npts);
  const double span = grid.t1 - grid.t0;
  for (int k = 0; k < npts; ++k)
    stats.times[k] = grid.t0 + span * double(k) / grid.steps;

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(npts);
  Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(npts);
  stats.pn_estimates = Eigen::MatrixXd::Zero(npts, dim);
  std::map<long, long> counts;

  // Deterministic stream_index order; safe to parallelize with a
  // per-index reduction if it ever becomes the bottleneck.
  for (long i = 0; i < n_traj; ++i) {
    TrajectoryRecord rec = run_trajectory(
        model, rho0, grid, RngStream{seed, std::uint64_t(i)}, true);
    for (int k = 0; k < npts; ++k) {
      const double m = mean_photon(rec.snapshots[k].second);
      sum(k) += m;
      sumsq(k) += m * m;
      stats.pn_estimates.row(k) +=
          photon_distribution(rec.snapshots[k].second).transpose();
    }
    counts[long(rec.jump_times.size())]++;
    if (!rec.jump_times.empty())
      stats.first_jump_times.push_back(rec.jump_times.front());
  }

  stats.mean_photon.resize(npts);
  stats.mean_photon_se.resize(npts);
  for (int k = 0; k < npts; ++k) {
    const double m = sum(k) / double(n_traj);
    stats.mean_photon[k] = m;
    const double var = std::max(0.0, sumsq(k) / double(n_traj) - m * m);
    stats.mean_photon_se[k] = std::sqrt(var / double(n_traj));
  }
  stats.pn_estimates /= double(n_traj);
  for (const auto& [k, c] : counts)
    stats.count_histogram[k] = double(c) / double(n_traj);
  std::sort(stats.first_jump_times.begin(), stats.first_jump_times.end());
  return stats;
}

G2Estimate mc_g2(const JumpModel& model, const DensityMatrix& rho0,
                 double window, long n_traj, std::uint64_t seed) {
  if (!(window > 0.0)) throw ConfigError("g2 window must be positive");
  if (n_traj < 1) throw ConfigError("n_traj must be >= 1");
  const double duration = 5.0 * window;
  const double live = duration - window;  // pair starts need a full window

  long singles = 0;
  long pairs = 0;
  std::vector<double> jumps;
  for (long i = 0; i < n_traj; ++i) {
    std::mt19937_64 engine = make_engine(RngStream{seed, std::uint64_t(i)});
    DensityMatrix state = rho0;
    double t = 0.0;
    jumps.clear();
    while (t < duration) {
      const double u = uniform_open(engine);
      const auto tau = sample_waiting_time(model, state, u, duration - t);
      if (!tau) break;
      t += *tau;
      state = post_one_count(model, post_no_count(model, state, *tau));
      jumps.push_back(t);
    }
    for (std::size_t a = 0; a < jumps.size(); ++a) {
      if (jumps[a] > live) break;
      ++singles;
      for (std::size_t b = a + 1;
           b < jumps.size() && jumps[b] - jumps[a] < window; ++b) {
        ++pairs;
      }
    }
  }

  G2Estimate est{};
  est.coincidences = pairs;
  est.singles = singles;
  est.low_statistics = pairs < 100;
  const double rate = double(singles) / (double(n_traj) * live);
  if (singles == 0 || pairs == 0) {
    est.value = 0.0;
    est.std_error = 0.0;
    est.low_statistics = true;
    return est;
  }
  est.value =
      double(pairs) / (double(n_traj) * live * window * rate * rate);
  est.std_error = est.value / std::sqrt(double(pairs));
  return est;
}

}  // namespace pcs
