#include "photoncount/fockspace.hpp"

#include <cmath>
#include <string>

namespace pcs {

namespace {

void check_dim(int dim) {
  if (dim < 2) {
    throw ConfigError("Fock dimension must be at least 2, got " +
                      std::to_string(dim));
  }
}

}  // namespace

Matrix annihilation(int dim) {
  check_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
  check_dim(dim);
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return n;
}

Matrix e_lowering(int dim) {
  check_dim(dim);
  Matrix e = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) e(n - 1, n) = 1.0;
  return e;
}

DensityMatrix make_fock(int m, int dim) {
  check_dim(dim);
  if (m < 0) throw ConfigError("Fock level must be nonnegative");
  if (m >= dim) {
    throw TruncationError("Fock level " + std::to_string(m) +
                          " does not fit in dimension " + std::to_string(dim));
  }
  DensityMatrix state{Matrix::Zero(dim, dim), 0.0};
  state.rho(m, m) = 1.0;
  return state;
}

DensityMatrix make_thermal(double nbar, int dim, double tail_tol) {
  check_dim(dim);
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw ConfigError("thermal nbar must be finite and nonnegative");
  }
  const double q = nbar / (1.0 + nbar);  // p_n = (1-q) q^n
  const double tail = std::pow(q, double(dim));
  if (tail > tail_tol) {
    throw TruncationError("thermal tail mass " + std::to_string(tail) +
                          " exceeds tolerance; increase dim");
  }
  Eigen::VectorXd p(dim);
  double w = 1.0 - q;
  for (int n = 0; n < dim; ++n) {
    p(n) = w;
    w *= q;
  }
  p /= p.sum();
  DensityMatrix state{Matrix::Zero(dim, dim), tail};
  for (int n = 0; n < dim; ++n) state.rho(n, n) = p(n);
  return state;
}

DensityMatrix make_coherent(Complex alpha, int dim, double tail_tol) {
  check_dim(dim);
  const double nbar = std::norm(alpha);
  Eigen::VectorXcd c(dim);
  c(0) = std::exp(-0.5 * nbar);
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  const double kept = c.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  if (tail > tail_tol) {
    throw TruncationError("coherent tail mass " + std::to_string(tail) +
                          " exceeds tolerance; increase dim");
  }
  c /= std::sqrt(kept);
  return DensityMatrix{c * c.adjoint(), tail};
}

DensityMatrix make_superposition(
    const std::vector<std::pair<int, Complex>>& amps, int dim) {
  check_dim(dim);
  if (amps.empty()) throw ConfigError("superposition needs at least one term");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (const auto& [level, amp] : amps) {
    if (level < 0 || level >= dim) {
      throw TruncationError("superposition level " + std::to_string(level) +
                            " outside dimension " + std::to_string(dim));
    }
    psi(level) += amp;
  }
  const double norm = psi.norm();
  if (norm == 0.0) throw ConfigError("superposition amplitudes are all zero");
  psi /= norm;
  return DensityMatrix{psi * psi.adjoint(), 0.0};
}

Eigen::VectorXd photon_distribution(const DensityMatrix& state) {
  Eigen::VectorXd p = state.rho.diagonal().real();
  for (int n = 0; n < p.size(); ++n) p(n) = std::max(0.0, p(n));
  return p;
}

double mean_photon(const DensityMatrix& state) {
  double m = 0.0;
  const Eigen::VectorXd p = photon_distribution(state);
  for (int n = 0; n < p.size(); ++n) m += n * p(n);
  return m;
}

Diagnostics diagnostics(const DensityMatrix& state) {
  Diagnostics d{};
  d.trace = state.rho.trace().real();
  d.hermiticity_residual =
      (state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(state.rho,
                                           Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.vacuum_prob = state.rho(0, 0).real();
  return d;
}

}  // namespace pcs
