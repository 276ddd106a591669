#include "photoncount/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "photoncount/microderivation.hpp"

namespace pcs {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string model_name(JumpKind k) { return k == JumpKind::SD ? "SD" : "E"; }

std::string field_name(FieldKind k) {
  switch (k) {
    case FieldKind::Fock:
      return "fock";
    case FieldKind::Thermal:
      return "thermal";
    case FieldKind::Coherent:
      return "coherent";
    default:
      return "superposition";
  }
}

double rel_diff(double value, double oracle) {
  const double d = std::abs(value - oracle);
  return std::abs(oracle) > 1e-12 ? d / std::abs(oracle) : d;
}

json provenance(const SimConfig& cfg, const std::string& command) {
  return json{{"version", version_string()},
              {"command", command},
              {"seed", cfg.seed},
              {"config", json::parse(cfg.to_json_text())}};
}

// Cumulative composite Simpson values at the even grid indices.
std::vector<std::pair<int, double>> cumulative_simpson(
    const std::vector<double>& y, double h) {
  std::vector<std::pair<int, double>> out;
  double acc = 0.0;
  for (std::size_t k = 2; k < y.size(); k += 2) {
    acc += h / 3.0 * (y[k - 2] + 4.0 * y[k - 1] + y[k]);
    out.emplace_back(int(k), acc);
  }
  return out;
}

ResultBundle cmd_tables(const SimConfig& cfg) {
  std::ostringstream csv;
  csv << "model,field,nbar,rate_over_gamma,rate_oracle_over_gamma,rate_rel_diff,"
         "mean_after,mean_after_oracle,mean_after_abs_diff,mean_after_rel_diff,"
         "vacuum_after,vacuum_after_oracle,vacuum_after_abs_diff,"
         "vacuum_after_rel_diff,conditional_rate_over_gamma,"
         "conditional_rate_oracle_over_gamma,conditional_rate_rel_diff,"
         "g2,g2_oracle,g2_rel_diff\n";

  double max_rel = 0.0;
  const JumpKind models[] = {JumpKind::SD, JumpKind::E};
  for (JumpKind kind : models) {
    const JumpModel model{kind, cfg.gamma};
    struct Row {
      FieldKind field;
      double nbar;
    };
    std::vector<Row> rows;
    for (int m : cfg.table_fock_ms) rows.push_back({FieldKind::Fock, double(m)});
    for (double nb : cfg.table_nbars) rows.push_back({FieldKind::Thermal, nb});
    for (double nb : cfg.table_nbars) rows.push_back({FieldKind::Coherent, nb});

    for (const Row& row : rows) {
      FieldSpec fs;
      fs.kind = row.field;
      fs.m = int(std::lround(row.nbar));
      fs.nbar = row.nbar;
      const DensityMatrix rho = fs.build(cfg.dim, cfg.tail_tol);

      const double rate = one_count_rate(model, rho);
      const DensityMatrix after = post_one_count(model, rho);
      const double mean_after = mean_photon(after);
      const double vac_after = photon_distribution(after)(0);
      const double cond = one_count_rate(model, after);
      const double g2 = cond / rate;

      const Table1Entry t1 = table1_oracle(kind, row.field, row.nbar);
      const Table2Entry t2 = table2_oracle(model, row.field, row.nbar);

      const double rel[] = {rel_diff(rate, t2.rate),
                            rel_diff(mean_after, t1.mean_after),
                            rel_diff(vac_after, t1.vacuum_after),
                            rel_diff(cond, t2.conditional_rate),
                            rel_diff(g2, t2.g2)};
      for (double r : rel) max_rel = std::max(max_rel, r);

      csv << model_name(kind) << ',' << field_name(row.field) << ','
          << num(row.nbar) << ',' << num(rate / cfg.gamma) << ','
          << num(t2.rate / cfg.gamma) << ',' << num(rel[0]) << ','
          << num(mean_after) << ',' << num(t1.mean_after) << ','
          << num(std::abs(mean_after - t1.mean_after)) << ',' << num(rel[1])
          << ',' << num(vac_after) << ',' << num(t1.vacuum_after) << ','
          << num(std::abs(vac_after - t1.vacuum_after)) << ',' << num(rel[2])
          << ',' << num(cond / cfg.gamma) << ','
          << num(t2.conditional_rate / cfg.gamma) << ',' << num(rel[3]) << ','
          << num(g2) << ',' << num(t2.g2) << ',' << num(rel[4]) << '\n';
    }
  }

  json summary;
  summary["provenance"] = provenance(cfg, "tables");
  summary["max_relative_deviation"] = max_rel;
  summary["oracle_agreement_pass"] = max_rel <= 1e-9;

  ResultBundle out;
  out.summary_json = summary.dump(2) + "\n";
  out.files.emplace_back("tables.csv", csv.str());
  if (max_rel > 1e-9) out.status = 3;
  return out;
}

ResultBundle cmd_evolve(const SimConfig& cfg) {
  const JumpModel model{cfg.model, cfg.gamma};
  const DensityMatrix rho0 = cfg.field.build(cfg.dim, cfg.tail_tol);
  const EvolutionResult res = evolve(model, rho0, cfg.grid);
  const double nbar0 = res.mean_photon.front();

  std::ostringstream csv;
  csv << "gamma_t,nbar,p0,trace_residual";
  if (cfg.model == JumpKind::SD) csv << ",nbar_closed_form";
  csv << '\n';
  double max_closed_rel = 0.0;
  for (std::size_t k = 0; k < res.times.size(); ++k) {
    csv << num(cfg.gamma * res.times[k]) << ',' << num(res.mean_photon[k])
        << ',' << num(res.vacuum_prob[k]) << ',' << num(res.trace_residual[k]);
    if (cfg.model == JumpKind::SD) {
      const double closed =
          sd_mean_closed_form(nbar0, cfg.gamma, res.times[k] - res.times[0]);
      csv << ',' << num(closed);
      if (closed > 0.0) {
        max_closed_rel = std::max(
            max_closed_rel, std::abs(res.mean_photon[k] - closed) / closed);
      }
    }
    csv << '\n';
  }

  json summary;
  summary["provenance"] = provenance(cfg, "evolve");
  summary["nbar_initial"] = nbar0;
  summary["max_trace_residual"] =
      *std::max_element(res.trace_residual.begin(), res.trace_residual.end());
  if (cfg.model == JumpKind::SD) {
    summary["max_rel_dev_from_closed_form"] = max_closed_rel;
  } else {
    // nbar(t) = nbar(0) + gamma * integral of (p0 - 1)
    std::vector<double> integrand(res.times.size());
    for (std::size_t k = 0; k < res.times.size(); ++k)
      integrand[k] = res.vacuum_prob[k] - 1.0;
    const double h = (cfg.grid.t1 - cfg.grid.t0) / cfg.grid.steps;
    double worst = 0.0;
    for (const auto& [k, integral] : cumulative_simpson(integrand, h)) {
      const double rhs = nbar0 + cfg.gamma * integral;
      worst = std::max(worst, std::abs(res.mean_photon[k] - rhs) / nbar0);
    }
    summary["integral_identity_residual"] = worst;
  }

  ResultBundle out;
  out.summary_json = summary.dump(2) + "\n";
  out.files.emplace_back("evolve.csv", csv.str());
  return out;
}

ResultBundle cmd_trajectories(const SimConfig& cfg) {
  if (cfg.n_traj < 1) throw ConfigError("trajectories needs n_traj >= 1");
  const JumpModel model{cfg.model, cfg.gamma};
  const DensityMatrix rho0 = cfg.field.build(cfg.dim, cfg.tail_tol);
  const EnsembleStats stats =
      ensemble(model, rho0, cfg.grid, cfg.n_traj, cfg.seed);
  const EvolutionResult det = evolve(model, rho0, cfg.grid);

  std::ostringstream csv;
  csv << "gamma_t,mc_mean_photon,mc_std_error,solver_mean_photon\n";
  int within = 0;
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    csv << num(cfg.gamma * stats.times[k]) << ',' << num(stats.mean_photon[k])
        << ',' << num(stats.mean_photon_se[k]) << ','
        << num(det.mean_photon[k]) << '\n';
    if (std::abs(stats.mean_photon[k] - det.mean_photon[k]) <=
        3.0 * stats.mean_photon_se[k]) {
      ++within;
    }
  }
  const double frac = double(within) / double(stats.times.size());

  // KS distance between the empirical first-jump CDF (censored at t1)
  // and 1 - P_no-count(tau).
  const long n = stats.n_traj;
  double ks = 0.0;
  for (std::size_t i = 0; i < stats.first_jump_times.size(); ++i) {
    const double f = 1.0 - no_count_probability(
                               model, rho0, stats.first_jump_times[i] - cfg.grid.t0);
    ks = std::max(ks, std::abs(f - double(i) / double(n)));
    ks = std::max(ks, std::abs(f - double(i + 1) / double(n)));
  }
  const double f_end =
      1.0 - no_count_probability(model, rho0, cfg.grid.t1 - cfg.grid.t0);
  ks = std::max(ks, std::abs(f_end - double(stats.first_jump_times.size()) /
                                         double(n)));
  const double ks_critical = 1.6276 / std::sqrt(double(n));  // alpha = 1%

  json hist = json::object();
  for (const auto& [count, freq] : stats.count_histogram)
    hist[std::to_string(count)] = freq;

  json summary;
  summary["provenance"] = provenance(cfg, "trajectories");
  summary["n_traj"] = n;
  summary["fraction_within_3se"] = frac;
  summary["unraveling_consistency_pass"] = frac >= 0.95;
  summary["ks_statistic"] = ks;
  summary["ks_critical_1pct"] = ks_critical;
  summary["ks_pass"] = ks < ks_critical;
  summary["count_histogram"] = hist;

  ResultBundle out;
  out.summary_json = summary.dump(2) + "\n";
  out.files.emplace_back("trajectories.csv", csv.str());
  if (frac < 0.95 || ks >= ks_critical) out.status = 4;
  return out;
}

ResultBundle cmd_g2(const SimConfig& cfg) {
  const JumpModel model{cfg.model, cfg.gamma};
  const DensityMatrix rho0 = cfg.field.build(cfg.dim, cfg.tail_tol);
  if (!(one_count_rate(model, rho0) > 0.0)) {
    throw ConfigError(
        "g2 is undefined for a zero count rate; the initial field never "
        "produces a first count");
  }
  const double analytic = g2_immediate(model, rho0);

  json summary;
  summary["provenance"] = provenance(cfg, "g2");
  summary["analytic_g2"] = analytic;
  if (cfg.n_traj > 0) {
    const G2Estimate mc =
        mc_g2(model, rho0, cfg.g2_window / cfg.gamma, cfg.n_traj, cfg.seed);
    summary["mc_g2"] = mc.value;
    summary["mc_std_error"] = mc.std_error;
    summary["mc_coincidences"] = mc.coincidences;
    summary["mc_singles"] = mc.singles;
    summary["mc_low_statistics"] = mc.low_statistics;
    summary["mc_within_3se"] =
        std::abs(mc.value - analytic) <= 3.0 * mc.std_error;
  }

  ResultBundle out;
  out.summary_json = summary.dump(2) + "\n";
  return out;
}

ResultBundle cmd_derive_check(const SimConfig& cfg) {
  const DensityMatrix rho0 = cfg.field.build(cfg.dim, cfg.tail_tol);

  std::ostringstream csv;
  csv << "omega_dt,one_count_residual,no_count_residual,excited_rate,"
         "lambda_nbar\n";
  std::vector<double> dts{cfg.derive_dt, cfg.derive_dt / 2.0,
                          cfg.derive_dt / 4.0};
  std::vector<SuperopCheck> checks;
  double lambda_rel = 0.0;
  for (double dt : dts) {
    const SuperopCheck c =
        verify_superoperators(rho0, CouplingParams{cfg.derive_omega, dt});
    checks.push_back(c);
    if (c.lambda_nbar > 0.0) {
      lambda_rel = std::max(
          lambda_rel, std::abs(c.excited_rate - c.lambda_nbar) / c.lambda_nbar);
    }
    csv << num(cfg.derive_omega * dt) << ',' << num(c.one_count_residual)
        << ',' << num(c.no_count_residual) << ',' << num(c.excited_rate) << ','
        << num(c.lambda_nbar) << '\n';
  }

  // Least-squares slope of ln(residual) against ln(dt).
  auto fit_order = [&](auto pick) -> double {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < dts.size(); ++i) {
      const double r = pick(checks[i]);
      if (r <= 0.0) return std::numeric_limits<double>::quiet_NaN();
      const double x = std::log(dts[i]);
      const double y = std::log(r);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
      ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double order_one =
      fit_order([](const SuperopCheck& c) { return c.one_count_residual; });
  const double order_no =
      fit_order([](const SuperopCheck& c) { return c.no_count_residual; });

  json summary;
  summary["provenance"] = provenance(cfg, "derive-check");
  summary["fitted_order_one_count"] = order_one;
  summary["fitted_order_no_count"] = order_no;
  summary["lambda_identity_rel_dev"] = lambda_rel;
  summary["lambda_identity_pass"] = lambda_rel <= 1e-5;

  ResultBundle out;
  out.summary_json = summary.dump(2) + "\n";
  out.files.emplace_back("derive_check.csv", csv.str());
  return out;
}

}  // namespace

ResultBundle run_command(const std::string& command, const SimConfig& cfg) {
  if (command == "tables") return cmd_tables(cfg);
  if (command == "evolve") return cmd_evolve(cfg);
  if (command == "trajectories") return cmd_trajectories(cfg);
  if (command == "g2") return cmd_g2(cfg);
  if (command == "derive-check") return cmd_derive_check(cfg);
  throw ConfigError("unknown command \"" + command + "\"");
}

const char* version_string() { return "0.1.0"; }

}  // namespace pcs
