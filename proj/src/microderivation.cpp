#include "photoncount/microderivation.hpp"

#include <cmath>
#include <string>

namespace pcs {

namespace {

void check_params(const CouplingParams& p) {
  if (!(p.omega > 0.0) || !std::isfinite(p.omega)) {
    throw ConfigError("coupling omega must be positive");
  }
  if (!(p.dt > 0.0) || !std::isfinite(p.dt)) {
    throw ConfigError("micro step dt must be positive");
  }
  if (p.omega * p.dt > 0.1) {
    throw ConfigError("omega*dt must be <= 0.1 for the short-step expansion");
  }
}

int field_dim(const Matrix& rho_joint) {
  const int total = static_cast<int>(rho_joint.rows());
  if (total % 2 != 0 || total < 4) {
    throw ConfigError("joint density must be (2*dim) x (2*dim)");
  }
  return total / 2;
}

}  // namespace

Matrix interaction_hamiltonian(int dim, double omega) {
  if (dim < 2) throw ConfigError("Fock dimension must be at least 2");
  Matrix h = Matrix::Zero(2 * dim, 2 * dim);
  // |n,g> <-> |n-1,e| with element omega*sqrt(n)
  for (int n = 1; n < dim; ++n) {
    const double v = omega * std::sqrt(double(n));
    h(dim + n - 1, n) = v;  // <n-1,e| H |n,g>
    h(n, dim + n - 1) = v;
  }
  return h;
}

Matrix embed_ground(const Matrix& rho_f) {
  const int dim = static_cast<int>(rho_f.rows());
  Matrix joint = Matrix::Zero(2 * dim, 2 * dim);
  joint.topLeftCorner(dim, dim) = rho_f;
  return joint;
}

Matrix taylor_step(const Matrix& rho_joint, const CouplingParams& p) {
  check_params(p);
  const int dim = field_dim(rho_joint);
  const double excited =
      rho_joint.bottomRightCorner(dim, dim).trace().real();
  if (excited > 1e-12) {
    throw ConfigError("taylor_step requires the detector in its ground state");
  }
  const Matrix h = interaction_hamiltonian(dim, p.omega);
  const Complex i(0.0, 1.0);
  const Matrix comm = h * rho_joint - rho_joint * h;
  const Matrix hh = h * h;
  const Matrix second =
      2.0 * (h * rho_joint * h) - hh * rho_joint - rho_joint * hh;
  return rho_joint - i * p.dt * comm + 0.5 * p.dt * p.dt * second;
}

Matrix exact_step(const Matrix& rho_joint, const CouplingParams& p) {
  check_params(p);
  const int dim = field_dim(rho_joint);
  Matrix u = Matrix::Zero(2 * dim, 2 * dim);
  u(0, 0) = 1.0;                          // |0,g> is dark
  u(2 * dim - 1, 2 * dim - 1) = 1.0;      // |dim-1,e> has no partner in basis
  const Complex mi(0.0, -1.0);
  for (int n = 1; n < dim; ++n) {
    const double theta = p.omega * p.dt * std::sqrt(double(n));
    const double c = std::cos(theta);
    const Complex s = mi * std::sin(theta);
    const int ig = n;                // |n,g>
    const int ie = dim + n - 1;      // |n-1,e>
    u(ig, ig) = c;
    u(ie, ie) = c;
    u(ie, ig) = s;
    u(ig, ie) = s;
  }
  return u * rho_joint * u.adjoint();
}

DetectorBlocks detector_reduce(const Matrix& rho_joint) {
  const int dim = field_dim(rho_joint);
  return DetectorBlocks{rho_joint.topLeftCorner(dim, dim),
                        rho_joint.bottomRightCorner(dim, dim)};
}

SuperopCheck verify_superoperators(const DensityMatrix& rho_f,
                                   const CouplingParams& p) {
  check_params(p);
  const int dim = rho_f.dim();
  const double lambda = p.omega * p.omega * p.dt;
  const Matrix joint = embed_ground(rho_f.rho);

  const DetectorBlocks exact = detector_reduce(exact_step(joint, p));
  const Matrix a = annihilation(dim);
  const Matrix nop = number_operator(dim);
  const Matrix one_count_pred = lambda * p.dt * (a * rho_f.rho * a.adjoint());
  const Matrix no_count_pred =
      rho_f.rho - 0.5 * lambda * p.dt * (nop * rho_f.rho + rho_f.rho * nop);

  SuperopCheck out{};
  out.one_count_residual = (exact.e - one_count_pred).cwiseAbs().maxCoeff();
  out.no_count_residual = (exact.g - no_count_pred).cwiseAbs().maxCoeff();

  const DetectorBlocks stepped = detector_reduce(taylor_step(joint, p));
  out.excited_rate = stepped.e.trace().real() / p.dt;
  out.lambda_nbar = lambda * mean_photon(rho_f);
  return out;
}

}  // namespace pcs
