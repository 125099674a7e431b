#pragma once

#include <Eigen/Dense>
#include <vector>

#include "error.hpp"
#include "tolerances.hpp"

namespace qent {

// Validated probability vector: entries clamped to [0,1] within tol.psd,
// sum within tol.norm of 1, then renormalized exactly.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(const Eigen::VectorXd& p,
                        const Tolerances& tol = default_tolerances());
  explicit Distribution(const std::vector<double>& p,
                        const Tolerances& tol = default_tolerances());

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_(i); }
  const Eigen::VectorXd& vec() const { return p_; }

  // entries sorted nonincreasing
  Distribution sorted_desc() const;

 private:
  Eigen::VectorXd p_;
};

// p majorizes q: every prefix sum of the sorted-descending vectors dominates.
// Vectors of unequal length are zero-padded.
bool majorizes(const Distribution& p, const Distribution& q, double slack = 1e-12);

// Raw-vector variant used on subnormalized spectra (no sum check).
bool majorizes_raw(Eigen::VectorXd p, Eigen::VectorXd q, double slack = 1e-12);

}  // namespace qent
