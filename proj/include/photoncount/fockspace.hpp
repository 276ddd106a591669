#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "photoncount/errors.hpp"

namespace pcs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Field density operator on the truncated Fock basis |0> ... |dim-1>.
// tail_mass records the probability the untruncated state carries above
// the cutoff at construction time; the retained part is renormalized.
struct DensityMatrix {
  Matrix rho;
  double tail_mass = 0.0;

  int dim() const { return static_cast<int>(rho.rows()); }
};

struct Diagnostics {
  double trace;
  double hermiticity_residual;
  double min_eigenvalue;
  double vacuum_prob;
};

// <n-1| a |n> = sqrt(n). On the truncated basis a^dag annihilates the
// top level |dim-1>; everything implemented here only lowers photon
// numbers, so nothing leaks for states respecting the tail contract.
Matrix annihilation(int dim);
Matrix creation(int dim);
Matrix number_operator(int dim);

// Normalized lowering operator E = (n+1)^{-1/2} a:
// E|0> = 0 and E|n> = |n-1> for n >= 1.
Matrix e_lowering(int dim);

DensityMatrix make_fock(int m, int dim);
DensityMatrix make_thermal(double nbar, int dim, double tail_tol = 1e-12);
DensityMatrix make_coherent(Complex alpha, int dim, double tail_tol = 1e-12);
DensityMatrix make_superposition(const std::vector<std::pair<int, Complex>>& amps,
                                 int dim);

// Diagonal of rho, clamped to real probabilities.
Eigen::VectorXd photon_distribution(const DensityMatrix& state);
double mean_photon(const DensityMatrix& state);
Diagnostics diagnostics(const DensityMatrix& state);

}  // namespace pcs
