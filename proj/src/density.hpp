#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "distribution.hpp"
#include "error.hpp"
#include "tolerances.hpp"

namespace qent {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxDenseDim = 4096;

// Hermitian, positive semidefinite, unit-trace matrix. Construction validates
// and stores the symmetrized, trace-normalized form.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(const Matrix& m,
                         const Tolerances& tol = default_tolerances());

  static DensityMatrix diagonal(const Distribution& p);
  static DensityMatrix pure(const Vector& state);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }

 private:
  Matrix m_;
};

// Orthonormal column frame (unitary when square, which is the only case used).
class Basis {
 public:
  Basis() = default;
  explicit Basis(const Matrix& b, const Tolerances& tol = default_tolerances());

  static Basis standard(int dim);

  int dim() const { return static_cast<int>(b_.rows()); }
  const Matrix& mat() const { return b_; }
  Vector column(int i) const { return b_.col(i); }

 private:
  Matrix b_;
};

struct Purification {
  Eigen::VectorXd schmidt;  // nonincreasing, squares sum to 1
  Basis basis_a;            // eigenvector frame on the original space
  Basis basis_b;            // standard basis of dimension rank(rho)
  int dim_a = 0;
  int dim_b = 0;

  Vector state_vector() const;  // sum_i schmidt_i |a_i> (x) |e_i>
  DensityMatrix state() const;
};

// Eigenvalues sorted nonincreasing, clamped to [0,1], renormalized.
Distribution spectrum(const DensityMatrix& rho);

// Spectrum plus the matching eigenvector frame (column i pairs with value i).
std::pair<Distribution, Basis> eigensystem(const DensityMatrix& rho);

// Trace over one tensor factor of a state on dim_a * dim_b.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            bool keep_first);
Matrix partial_trace_raw(const Matrix& m, int dim_a, int dim_b, bool keep_first);

Purification purify(const DensityMatrix& rho);

// (1/2) * trace norm of (rho - sigma)
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance_raw(const Matrix& a, const Matrix& b);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qent
