#include "density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qent {

namespace {

// Eigenvalues below this (on a unit-trace matrix) are treated as exact zeros
// when computing rank; keeps purification round-trips inside tol.norm.
constexpr double kRankCutoff = 1e-14;

void check_square(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::BadInput, "matrix is not square and nonempty");
  }
  if (m.rows() > kMaxDenseDim) {
    throw Error(ErrorCode::TooLarge,
                "dimension " + std::to_string(m.rows()) + " exceeds dense cap " +
                    std::to_string(kMaxDenseDim));
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::BadInput, "matrix has non-finite entries");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(const Matrix& m, const Tolerances& tol) {
  check_square(m);
  const double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > tol.herm) {
    throw Error(ErrorCode::NotHermitian,
                "hermiticity defect " + std::to_string(herm_defect));
  }
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "eigen decomposition failed");
  }
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    throw Error(ErrorCode::NotPsd,
                "minimum eigenvalue " + std::to_string(min_eig));
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol.norm) {
    throw Error(ErrorCode::TraceNotOne, "trace " + std::to_string(tr));
  }
  m_ = h / tr;
}

DensityMatrix DensityMatrix::diagonal(const Distribution& p) {
  DensityMatrix rho;
  rho.m_ = p.vec().cast<std::complex<double>>().asDiagonal();
  return rho;
}

DensityMatrix DensityMatrix::pure(const Vector& state) {
  const double n2 = state.squaredNorm();
  if (n2 <= 0.0 || !state.allFinite()) {
    throw Error(ErrorCode::BadInput, "invalid state vector");
  }
  DensityMatrix rho;
  rho.m_ = state * state.adjoint() / n2;
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw Error(ErrorCode::BadInput, "dimension must be positive");
  DensityMatrix rho;
  rho.m_ = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return rho;
}

Basis::Basis(const Matrix& b, const Tolerances& tol) {
  check_square(b);
  const double defect =
      (b.adjoint() * b - Matrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
  if (defect > tol.unitary) {
    throw Error(ErrorCode::NotUnitary,
                "orthonormality defect " + std::to_string(defect));
  }
  b_ = b;
}

Basis Basis::standard(int dim) {
  if (dim <= 0) throw Error(ErrorCode::BadInput, "dimension must be positive");
  Basis b;
  b.b_ = Matrix::Identity(dim, dim);
  return b;
}

Vector Purification::state_vector() const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_a) * dim_b);
  for (int i = 0; i < dim_b; ++i) {
    const Vector a = basis_a.column(i);
    for (int r = 0; r < dim_a; ++r) {
      v(static_cast<Eigen::Index>(r) * dim_b + i) += schmidt(i) * a(r);
    }
  }
  return v;
}

DensityMatrix Purification::state() const { return DensityMatrix::pure(state_vector()); }

namespace {

// Shared eigendecomposition: values descending, clamped, renormalized.
std::pair<Eigen::VectorXd, Matrix> sorted_eigs(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "eigen decomposition failed");
  }
  const int d = rho.dim();
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ev(a) > ev(b); });
  Eigen::VectorXd lam(d);
  Matrix frame(d, d);
  for (int k = 0; k < d; ++k) {
    lam(k) = std::clamp(ev(idx[k]), 0.0, 1.0);
    frame.col(k) = es.eigenvectors().col(idx[k]);
  }
  lam /= lam.sum();
  return {lam, frame};
}

}  // namespace

Distribution spectrum(const DensityMatrix& rho) {
  Distribution out(sorted_eigs(rho).first);
  return out;
}

std::pair<Distribution, Basis> eigensystem(const DensityMatrix& rho) {
  auto [lam, frame] = sorted_eigs(rho);
  return {Distribution(lam), Basis(frame)};
}

Matrix partial_trace_raw(const Matrix& m, int dim_a, int dim_b, bool keep_first) {
  if (static_cast<Eigen::Index>(dim_a) * dim_b != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "factor dimensions do not multiply to the matrix dimension");
  }
  if (keep_first) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(static_cast<Eigen::Index>(i) * dim_b + k,
                         static_cast<Eigen::Index>(j) * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += m(static_cast<Eigen::Index>(k) * dim_b + i,
                       static_cast<Eigen::Index>(k) * dim_b + j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            bool keep_first) {
  return DensityMatrix(partial_trace_raw(rho.mat(), dim_a, dim_b, keep_first));
}

Purification purify(const DensityMatrix& rho) {
  auto [lam, frame] = sorted_eigs(rho);
  int rank = 0;
  while (rank < lam.size() && lam(rank) > kRankCutoff) ++rank;
  if (rank == 0) throw Error(ErrorCode::Internal, "zero-rank density matrix");
  Purification out;
  out.dim_a = rho.dim();
  out.dim_b = rank;
  out.schmidt = lam.head(rank).cwiseSqrt();
  out.basis_a = Basis(frame);
  out.basis_b = Basis::standard(rank);
  return out;
}

double trace_distance_raw(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "trace distance of unequal dims");
  }
  Matrix diff = (a - b);
  diff = (diff + diff.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance_raw(rho.mat(), sigma.mat());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (static_cast<Eigen::Index>(a.dim()) * b.dim() > kMaxDenseDim) {
    throw Error(ErrorCode::TooLarge, "tensor product exceeds dense cap");
  }
  return DensityMatrix(kron(a.mat(), b.mat()));
}

}  // namespace qent
