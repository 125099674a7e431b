#pragma once

#include <cstdint>
#include <vector>

#include "density.hpp"
#include "rng.hpp"

namespace qent {

// Pinching channel: rho -> sum_i <g_i|rho|g_i> |g_i><g_i|.
DensityMatrix dephase(const DensityMatrix& rho, const Basis& j);

// Born weights <g_i|rho|g_i> of measuring rho in basis j (clamped, renormalized).
Distribution measurement_distribution(const DensityMatrix& rho, const Basis& j);

// Haar-distributed unitary via QR of a complex Ginibre matrix with the
// R-diagonal phase correction.
Matrix haar_unitary(int dim, Rng& rng);
Basis haar_basis(int dim, Rng& rng);
Basis haar_basis(int dim, std::uint64_t seed);

// Ginibre G G^dagger normalized: full-rank mixed state, deterministic per seed.
DensityMatrix random_density(int dim, Rng& rng);
DensityMatrix random_density(int dim, std::uint64_t seed);

// Global unitary U1 = sum_j |g_j><g_j| (x) V_j on system (x) ancilla (both dim
// d) realizing the pinching in basis j on the system marginal while the
// ancilla marginal stays maximally mixed. The V_j are cyclic-shift powers
// conjugated into the basis, so tr[V_i V_j^dagger] = d delta_ij.
struct DephasingLift {
  Basis basis;
  std::vector<Matrix> shifts;
  Matrix global_unitary;  // d^2 x d^2
  int dim = 0;
};

// Construction is verified on seeded probe states; residual above tolerance
// raises VerificationFailed.
DephasingLift dephasing_lift(const Basis& j, double verify_tol = 1e-10);

}  // namespace qent
