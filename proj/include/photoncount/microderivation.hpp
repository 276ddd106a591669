#pragma once

#include "photoncount/fockspace.hpp"

namespace pcs {

// Joint detector (+) field space. Basis index is s*dim + n with the
// detector level s = 0 (ground) or 1 (excited) and Fock level n.

struct CouplingParams {
  double omega;  // vacuum Rabi coupling, 1/time
  double dt;     // micro time step; omega*dt <= 0.1 enforced
};

struct DetectorBlocks {
  Matrix g;
  Matrix e;
};

// H = Omega (a^dag |g><e| + a |e><g|), hbar = 1.
Matrix interaction_hamiltonian(int dim, double omega);

// rho_f with the detector in its ground state.
Matrix embed_ground(const Matrix& rho_f);

// Second-order Taylor step of the joint density operator. Requires the
// excited detector block to be empty at step start.
Matrix taylor_step(const Matrix& rho_joint, const CouplingParams& p);

// Exact unitary step exp(-iH dt) rho exp(+iH dt), built from the closed
// 2x2 rotations of the |n,g> <-> |n-1,e> subspaces.
Matrix exact_step(const Matrix& rho_joint, const CouplingParams& p);

// Partial trace bookkeeping: g_block + e_block is the reduced field state.
DetectorBlocks detector_reduce(const Matrix& rho_joint);

struct SuperopCheck {
  // max-norm residuals of the exactly evolved detector blocks against
  // the one-count map times dt and the first-order no-count expansion,
  // with lambda = omega^2 dt.
  double one_count_residual;
  double no_count_residual;
  // trace of the excited block of the Taylor step divided by dt, and the
  // predicted absorption rate lambda * nbar it should reproduce.
  double excited_rate;
  double lambda_nbar;
};

SuperopCheck verify_superoperators(const DensityMatrix& rho_f,
                                   const CouplingParams& p);

}  // namespace pcs
