#include "photoncount/jump_models.hpp"

#include <cmath>
#include <string>

namespace pcs {

namespace {

void check_model(const JumpModel& model) {
  if (!(model.gamma > 0.0) || !std::isfinite(model.gamma)) {
    throw ConfigError("jump model gamma must be finite and positive");
  }
}

void check_tau(double tau) {
  if (!(tau >= 0.0)) throw ConfigError("no-count interval tau must be >= 0");
}

}  // namespace

Matrix lowering_op(JumpKind kind, int dim) {
  return kind == JumpKind::SD ? annihilation(dim) : e_lowering(dim);
}

UnnormalizedDensity one_count_map(const JumpModel& model,
                                  const DensityMatrix& rho) {
  check_model(model);
  const Matrix a = lowering_op(model.kind, rho.dim());
  return UnnormalizedDensity{model.gamma * (a * rho.rho * a.adjoint())};
}

double one_count_rate(const JumpModel& model, const DensityMatrix& rho) {
  check_model(model);
  const Eigen::VectorXd p = photon_distribution(rho);
  if (model.kind == JumpKind::SD) {
    double nbar = 0.0;
    for (int n = 0; n < p.size(); ++n) nbar += n * p(n);
    return model.gamma * nbar;
  }
  return model.gamma * (1.0 - p(0));
}

DensityMatrix post_one_count(const JumpModel& model, const DensityMatrix& rho) {
  UnnormalizedDensity mapped = one_count_map(model, rho);
  const double w = mapped.weight();
  if (!(w > 0.0)) {
    throw ConditioningError(
        "post_one_count: count rate is zero, conditioning undefined");
  }
  return DensityMatrix{mapped.rho / w, rho.tail_mass};
}

UnnormalizedDensity no_count_map(const JumpModel& model,
                                 const DensityMatrix& rho, double tau,
                                 double omega0) {
  check_model(model);
  check_tau(tau);
  const int dim = rho.dim();
  const double g = model.gamma;
  Matrix out(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int mp = 0; mp < dim; ++mp) {
      double decay;
      if (model.kind == JumpKind::SD) {
        decay = std::exp(-0.5 * g * (m + mp) * tau);
      } else {
        // E^dag E = 1 - |0><0|, so the vacuum row/column only decays
        // through the other index.
        const int excited = (m > 0 ? 1 : 0) + (mp > 0 ? 1 : 0);
        decay = std::exp(-0.5 * g * excited * tau);
      }
      const Complex phase =
          std::exp(Complex(0.0, -omega0 * (m - mp) * tau));
      out(m, mp) = rho.rho(m, mp) * decay * phase;
    }
  }
  return UnnormalizedDensity{std::move(out)};
}

double no_count_probability(const JumpModel& model, const DensityMatrix& rho,
                            double tau) {
  check_model(model);
  check_tau(tau);
  const Eigen::VectorXd p = photon_distribution(rho);
  if (model.kind == JumpKind::SD) {
    double s = 0.0;
    for (int n = 0; n < p.size(); ++n)
      s += p(n) * std::exp(-model.gamma * n * tau);
    return s;
  }
  return p(0) + (1.0 - p(0)) * std::exp(-model.gamma * tau);
}

DensityMatrix post_no_count(const JumpModel& model, const DensityMatrix& rho,
                            double tau, double omega0) {
  UnnormalizedDensity mapped = no_count_map(model, rho, tau, omega0);
  const double w = mapped.weight();
  return DensityMatrix{mapped.rho / w, rho.tail_mass};
}

Table1Entry table1_oracle(JumpKind kind, FieldKind field, double nbar) {
  switch (field) {
    case FieldKind::Fock: {
      const int m = static_cast<int>(std::lround(nbar));
      if (m < 1 || std::abs(nbar - m) > 1e-12) {
        throw ConfigError("Fock oracle needs an integer level m >= 1");
      }
      // Same in both models: one photon is removed for sure.
      return Table1Entry{double(m - 1), m == 1 ? 1.0 : 0.0};
    }
    case FieldKind::Thermal:
      if (!(nbar > 0.0)) throw ConfigError("thermal oracle needs nbar > 0");
      if (kind == JumpKind::SD) {
        return Table1Entry{2.0 * nbar, 1.0 / ((1.0 + nbar) * (1.0 + nbar))};
      }
      return Table1Entry{nbar, 1.0 / (1.0 + nbar)};
    case FieldKind::Coherent:
      if (!(nbar > 0.0)) throw ConfigError("coherent oracle needs nbar > 0");
      if (kind == JumpKind::SD) {
        return Table1Entry{nbar, std::exp(-nbar)};
      }
      return Table1Entry{nbar / (1.0 - std::exp(-nbar)) - 1.0,
                         nbar / (std::expm1(nbar))};
    default:
      throw ConfigError("table oracles cover Fock, thermal and coherent only");
  }
}

Table2Entry table2_oracle(const JumpModel& model, FieldKind field,
                          double nbar) {
  check_model(model);
  const double g = model.gamma;
  switch (field) {
    case FieldKind::Fock: {
      const int m = static_cast<int>(std::lround(nbar));
      if (m < 1 || std::abs(nbar - m) > 1e-12) {
        throw ConfigError("Fock oracle needs an integer level m >= 1");
      }
      if (model.kind == JumpKind::SD) {
        return Table2Entry{g * m, g * (m - 1), double(m - 1) / m};
      }
      // m = 1 conditions on the vacuum, which cannot produce a second count.
      return Table2Entry{g, m >= 2 ? g : 0.0, m >= 2 ? 1.0 : 0.0};
    }
    case FieldKind::Thermal:
      if (!(nbar > 0.0)) throw ConfigError("thermal oracle needs nbar > 0");
      if (model.kind == JumpKind::SD) {
        return Table2Entry{g * nbar, 2.0 * g * nbar, 2.0};
      }
      return Table2Entry{g * nbar / (1.0 + nbar), g * nbar / (1.0 + nbar),
                         1.0};
    case FieldKind::Coherent: {
      if (!(nbar > 0.0)) throw ConfigError("coherent oracle needs nbar > 0");
      if (model.kind == JumpKind::SD) {
        return Table2Entry{g * nbar, g * nbar, 1.0};
      }
      const double rate = g * (1.0 - std::exp(-nbar));
      const double cond = g * (1.0 - nbar / std::expm1(nbar));
      const double g2 = (std::exp(nbar) - (nbar + 1.0)) /
                        (std::exp(nbar) + std::exp(-nbar) - 2.0);
      return Table2Entry{rate, cond, g2};
    }
    default:
      throw ConfigError("table oracles cover Fock, thermal and coherent only");
  }
}

}  // namespace pcs
