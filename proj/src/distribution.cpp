#include "distribution.hpp"

#include <algorithm>
#include <cmath>

namespace qent {

namespace {

Eigen::VectorXd validate_probability(Eigen::VectorXd p, const Tolerances& tol) {
  if (p.size() == 0) {
    throw Error(ErrorCode::BadInput, "empty probability vector");
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i))) {
      throw Error(ErrorCode::BadInput, "non-finite probability entry");
    }
    if (p(i) < -tol.psd) {
      throw Error(ErrorCode::BadInput,
                  "negative probability entry " + std::to_string(p(i)));
    }
    p(i) = std::clamp(p(i), 0.0, 1.0);
  }
  const double s = p.sum();
  if (std::abs(s - 1.0) > tol.norm) {
    throw Error(ErrorCode::BadInput,
                "probabilities sum to " + std::to_string(s) + ", not 1");
  }
  return p / s;
}

}  // namespace

Distribution::Distribution(const Eigen::VectorXd& p, const Tolerances& tol)
    : p_(validate_probability(p, tol)) {}

Distribution::Distribution(const std::vector<double>& p, const Tolerances& tol)
    : Distribution(Eigen::Map<const Eigen::VectorXd>(p.data(),
                                                     static_cast<Eigen::Index>(p.size())),
                   tol) {}

Distribution Distribution::sorted_desc() const {
  Eigen::VectorXd q = p_;
  std::sort(q.data(), q.data() + q.size(), std::greater<double>());
  Distribution out;
  out.p_ = q;
  return out;
}

bool majorizes_raw(Eigen::VectorXd p, Eigen::VectorXd q, double slack) {
  const Eigen::Index n = std::max(p.size(), q.size());
  p.conservativeResizeLike(Eigen::VectorXd::Zero(n));
  q.conservativeResizeLike(Eigen::VectorXd::Zero(n));
  std::sort(p.data(), p.data() + n, std::greater<double>());
  std::sort(q.data(), q.data() + n, std::greater<double>());
  double sp = 0.0, sq = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sp += p(k);
    sq += q(k);
    if (sp < sq - slack) return false;
  }
  return true;
}

bool majorizes(const Distribution& p, const Distribution& q, double slack) {
  return majorizes_raw(p.vec(), q.vec(), slack);
}

}  // namespace qent
