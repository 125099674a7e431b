#include "channels.hpp"

#include <Eigen/QR>
#include <cmath>
#include <complex>

#include "error.hpp"

namespace qent {

Distribution measurement_distribution(const DensityMatrix& rho, const Basis& j) {
  if (rho.dim() != j.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and basis dimensions differ");
  }
  const Matrix& b = j.mat();
  Eigen::VectorXd q(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) {
    q(i) = std::real(std::complex<double>(b.col(i).adjoint() * rho.mat() * b.col(i)));
  }
  return Distribution(q);
}

DensityMatrix dephase(const DensityMatrix& rho, const Basis& j) {
  Distribution q = measurement_distribution(rho, j);
  const Matrix& b = j.mat();
  Matrix out = b * q.vec().asDiagonal() * b.adjoint();
  return DensityMatrix(out);
}

Matrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1 || dim > kMaxDenseDim) throw Error(ErrorCode::BadInput, "bad unitary dimension");
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is exactly Haar, not QR-convention
  // dependent.
  for (int c = 0; c < dim; ++c) {
    std::complex<double> diag = r(c, c);
    double a = std::abs(diag);
    q.col(c) *= (a > 0) ? diag / a : std::complex<double>(1, 0);
  }
  return q;
}

Basis haar_basis(int dim, Rng& rng) { return Basis(haar_unitary(dim, rng)); }

Basis haar_basis(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_basis(dim, rng);
}

DensityMatrix random_density(int dim, Rng& rng) {
  if (dim < 1 || dim > kMaxDenseDim) throw Error(ErrorCode::BadInput, "bad state dimension");
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
  Matrix w = g * g.adjoint();
  w /= w.trace();
  return DensityMatrix(w);
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rng);
}

DephasingLift dephasing_lift(const Basis& j, double verify_tol) {
  const int d = j.dim();
  if (d * d > kMaxDenseDim) throw Error(ErrorCode::TooLarge, "lift exceeds dense cap");
  const Matrix& b = j.mat();

  // Cyclic shift X|k> = |k+1 mod d>; V_j = B X^j B^dagger.
  Matrix shift = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) shift((k + 1) % d, k) = 1.0;

  DephasingLift lift;
  lift.basis = j;
  lift.dim = d;
  Matrix xp = Matrix::Identity(d, d);
  for (int p = 0; p < d; ++p) {
    lift.shifts.push_back(b * xp * b.adjoint());
    xp = shift * xp;
  }

  Matrix u = Matrix::Zero(d * d, d * d);
  for (int p = 0; p < d; ++p) {
    Matrix proj = b.col(p) * b.col(p).adjoint();
    u += kron(proj, lift.shifts[p]);
  }
  lift.global_unitary = u;

  // Probe check: system marginal pinched, ancilla marginal maximally mixed.
  Rng probe(0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(d));
  Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);
  for (int t = 0; t < 3; ++t) {
    DensityMatrix rho = random_density(d, probe);
    Matrix omega = u * kron(rho.mat(), mixed) * u.adjoint();
    Matrix sys = partial_trace_raw(omega, d, d, true);
    Matrix anc = partial_trace_raw(omega, d, d, false);
    double r1 = trace_distance_raw(sys, dephase(rho, j).mat());
    double r2 = trace_distance_raw(anc, mixed);
    if (r1 > verify_tol || r2 > verify_tol) {
      throw Error(ErrorCode::VerificationFailed, "dephasing lift marginal identity failed");
    }
  }
  return lift;
}

}  // namespace qent
