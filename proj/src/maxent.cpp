#include "maxent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace qent {

namespace {

constexpr double kEntrySlack = 1e-9;

struct Validated {
  int n = 0, m = 0;
  Eigen::MatrixXd alpha;  // clamped copy
};

Validated validate(const MaxEntProblem& prob) {
  Validated v;
  v.n = static_cast<int>(prob.alpha.rows());
  v.m = static_cast<int>(prob.alpha.cols());
  if (v.n < 1 || v.m < 1) throw Error(ErrorCode::BadInput, "empty overlap table");
  if (v.m != prob.q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "observation length does not match overlap columns");
  }
  if (v.m > v.n) {
    throw Error(ErrorCode::BadInput, "more observed outcomes than latent levels");
  }
  if (!prob.alpha.allFinite()) throw Error(ErrorCode::BadInput, "non-finite overlap entry");
  v.alpha = prob.alpha;
  for (int i = 0; i < v.n; ++i) {
    for (int j = 0; j < v.m; ++j) {
      double& a = v.alpha(i, j);
      if (a < -kEntrySlack || a > 1.0 + kEntrySlack) {
        throw Error(ErrorCode::BadInput, "overlap entry outside [0,1]");
      }
      a = std::clamp(a, 0.0, 1.0);
    }
    const double row = v.alpha.row(i).sum();
    if (row > 1.0 + kEntrySlack) {
      throw Error(ErrorCode::BadInput, "overlap row mass exceeds 1");
    }
    if (v.m == v.n && std::abs(row - 1.0) > kEntrySlack) {
      throw Error(ErrorCode::BadInput, "square overlap table must have unit rows");
    }
  }
  switch (prob.measure.kind()) {
    case MeasureKind::VonNeumann:
    case MeasureKind::Renyi:
    case MeasureKind::Tsallis:
      break;
    default:
      throw Error(ErrorCode::BadInput, "estimation supports vn, renyi and tsallis measures");
  }
  return v;
}

double full_residual(const Eigen::VectorXd& p, const Eigen::MatrixXd& alpha,
                     const Distribution& q) {
  return (alpha.transpose() * p - q.vec()).cwiseAbs().maxCoeff();
}

// Euclidean projection onto the probability simplex (sort-and-threshold).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / (i + 1);
    if (u[i] - t > 0) { rho = i + 1; theta = t; }
  }
  Eigen::VectorXd out = (x.array() - theta).cwiseMax(0.0);
  return out;
}

}  // namespace

MaxEntSolution solve_maxent_relaxed(const MaxEntProblem& prob) {
  const Validated v = validate(prob);
  std::vector<int> retained;
  for (int j = 0; j < v.m; ++j)
    if (prob.q[j] > 0.0) retained.push_back(j);
  if (retained.empty()) throw Error(ErrorCode::DegenerateQ, "all observed weights vanish");
  const double m_eff = static_cast<double>(retained.size());

  Eigen::VectorXd ap = Eigen::VectorXd::Zero(v.n);  // merged sensitivities alpha'
  for (int i = 0; i < v.n; ++i)
    for (int j : retained) ap(i) += v.alpha(i, j) / prob.q[j];

  MaxEntSolution sol;
  sol.dropped_outcomes = v.m - static_cast<int>(retained.size());
  sol.multipliers = Eigen::VectorXd::Zero(v.m);

  const double lo = ap.minCoeff(), hi = ap.maxCoeff();
  if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
    // Constant sensitivity: the data constraint is either the normalization
    // itself or unsatisfiable.
    if (std::abs(hi - m_eff) > 1e-9 * std::max(1.0, m_eff)) {
      throw Error(ErrorCode::NoBracket, "constant sensitivity incompatible with target");
    }
    sol.p = Eigen::VectorXd::Constant(v.n, 1.0 / v.n);
    sol.gamma_data = 0.0;
    sol.gamma_norm = std::log(static_cast<double>(v.n));
  } else if (prob.measure.kind() == MeasureKind::VonNeumann) {
    // p_i = exp(-gamma_norm - gamma_data * ap_i); mean of ap must hit m_eff.
    auto weights = [&](double g) {
      const double shift = (g >= 0) ? lo : hi;
      return ((-g) * (ap.array() - shift)).exp().matrix().eval();
    };
    auto phi = [&](double g) {
      Eigen::VectorXd w = weights(g);
      return ap.dot(w) / w.sum() - m_eff;
    };
    if (m_eff > hi - 1e-12 || m_eff < lo + 1e-12) {
      throw Error(ErrorCode::NoBracket, "target outside reachable sensitivity range");
    }
    double glo = -1.0, ghi = 1.0;
    while (phi(glo) <= 0.0 && glo > -1e8) glo *= 2.0;
    while (phi(ghi) >= 0.0 && ghi < 1e8) ghi *= 2.0;
    if (phi(glo) <= 0.0 || phi(ghi) >= 0.0) {
      throw Error(ErrorCode::NoBracket, "no multiplier bracket for the data constraint");
    }
    for (int it = 0; it < 500; ++it) {
      const double mid = 0.5 * (glo + ghi);
      if (phi(mid) > 0.0) glo = mid; else ghi = mid;
      if (ghi - glo < 1e-15 * std::max(1.0, std::abs(glo))) break;
    }
    const double g = 0.5 * (glo + ghi);
    Eigen::VectorXd w = weights(g);
    sol.p = w / w.sum();
    sol.gamma_data = g;
    const double shift = (g >= 0) ? lo : hi;
    sol.gamma_norm = std::log(w.sum()) - g * shift;
  } else {
    // Power families: p_i proportional to (1 + t * ap_i)^(1/(s-1)).
    const double s = prob.measure.param();
    const double e = 1.0 / (s - 1.0);
    const double t_min = -1.0 / hi;
    auto weights = [&](double t) {
      Eigen::ArrayXd lw(v.n);
      for (int i = 0; i < v.n; ++i) {
        const double arg = 1.0 + t * ap(i);
        lw(i) = (arg <= 0.0) ? -std::numeric_limits<double>::infinity()
                             : e * std::log(arg);
      }
      const double mx = lw.maxCoeff();
      return std::pair<Eigen::VectorXd, double>((lw - mx).exp().matrix(), mx);
    };
    auto h = [&](double t) {
      auto [w, mx] = weights(t);
      (void)mx;
      return ap.dot(w) / w.sum() - m_eff;
    };
    std::vector<double> ts;
    for (double u = -12.0; u <= 12.0; u += 0.5) ts.push_back(t_min + std::pow(10.0, u));
    if (t_min < 0.0) ts.push_back(0.0);
    ts.push_back(1e14);
    std::sort(ts.begin(), ts.end());
    double tlo = 0.0, thi = 0.0;
    bool found = false;
    double prev_t = ts[0], prev_h = h(ts[0]);
    for (size_t k = 1; k < ts.size() && !found; ++k) {
      const double cur_h = h(ts[k]);
      if (prev_h == 0.0 || prev_h * cur_h < 0.0) {
        tlo = prev_t; thi = ts[k]; found = true;
      }
      prev_t = ts[k]; prev_h = cur_h;
    }
    if (!found) throw Error(ErrorCode::NoBracket, "no multiplier bracket for the data constraint");
    double flo = h(tlo);
    for (int it = 0; it < 300; ++it) {
      const double mid = 0.5 * (tlo + thi);
      const double fm = h(mid);
      if ((flo <= 0.0) == (fm <= 0.0)) { tlo = mid; flo = fm; } else { thi = mid; }
    }
    const double t = 0.5 * (tlo + thi);
    auto [w, mx] = weights(t);
    sol.p = w / w.sum();
    sol.gamma_data = t / (1.0 - s);
    sol.gamma_norm = mx + std::log(w.sum());
  }

  sol.residual_constraint = std::abs(ap.dot(sol.p) - m_eff);
  sol.residual_norm = std::abs(sol.p.sum() - 1.0);
  sol.objective = classical_entropy(Distribution(sol.p), prob.measure, prob.base);
  sol.converged = sol.residual_constraint <= 1e-8 * std::max(1.0, m_eff);
  return sol;
}

namespace {

// Active-set polish: project onto the affine set {alpha^T p = q, sum p = 1}
// restricted to a shrinking support, dropping the most negative level each
// pass. Consistent systems certify at machine precision where the gradient
// method plateaus; on inconsistent ones the result is simply no better.
Eigen::VectorXd polish_support(const Eigen::MatrixXd& alpha,
                               const Eigen::VectorXd& q,
                               const Eigen::VectorXd& x0) {
  const int n = static_cast<int>(alpha.rows());
  const int m = static_cast<int>(alpha.cols());
  std::vector<int> sup(n);
  std::iota(sup.begin(), sup.end(), 0);
  Eigen::VectorXd c(m + 1);
  c.head(m) = q;
  c(m) = 1.0;
  while (!sup.empty()) {
    const int k = static_cast<int>(sup.size());
    Eigen::MatrixXd bs(m + 1, k);
    Eigen::VectorXd xs(k);
    for (int r = 0; r < k; ++r) {
      bs.col(r).head(m) = alpha.row(sup[r]).transpose();
      bs(m, r) = 1.0;
      xs(r) = x0(sup[r]);
    }
    const Eigen::VectorXd ps =
        xs - bs.transpose() * (bs * bs.transpose())
                                  .completeOrthogonalDecomposition()
                                  .solve(bs * xs - c);
    int worst = 0;
    for (int r = 1; r < k; ++r)
      if (ps(r) < ps(worst)) worst = r;
    if (ps(worst) >= -1e-11) {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
      for (int r = 0; r < k; ++r) out(sup[r]) = std::max(ps(r), 0.0);
      const double s = out.sum();
      if (s > 0.5) out /= s;
      return out;
    }
    sup.erase(sup.begin() + worst);
  }
  return x0;
}

// Accelerated projected gradient for min ||A^T p - q||^2 / 2 over the simplex,
// finished by the active-set polish. Returns the closest feasible point found;
// used both as a feasibility certificate and as the interior starting point.
Eigen::VectorXd nearest_feasible(const Eigen::MatrixXd& alpha,
                                 const Eigen::VectorXd& q, int iters,
                                 double* residual_out) {
  const int n = static_cast<int>(alpha.rows());
  const double L = std::max(alpha.squaredNorm(), 1e-12);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd y = x, x_prev = x;
  double tk = 1.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd grad = alpha * (alpha.transpose() * y - q);
    x = project_simplex(y - grad / L);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    y = x + ((tk - 1.0) / t_next) * (x - x_prev);
    x_prev = x;
    tk = t_next;
    if ((alpha.transpose() * x - q).squaredNorm() < 1e-26) break;
  }
  double res = (alpha.transpose() * x - q).norm();
  if (res > 1e-12 && n <= 512) {
    const Eigen::VectorXd polished = polish_support(alpha, q, x);
    const double res_p = (alpha.transpose() * polished - q).norm();
    if (res_p < res && polished.minCoeff() >= 0.0) {
      x = polished;
      res = res_p;
    }
  }
  if (residual_out) *residual_out = res;
  return x;
}

// Dykstra alternation between the affine set {B p = c} and the nonnegative
// orthant; the normalization row is folded into B.
class FeasibleProjector {
 public:
  FeasibleProjector(const Eigen::MatrixXd& alpha, const Eigen::VectorXd& q) {
    const int n = static_cast<int>(alpha.rows());
    const int m = static_cast<int>(alpha.cols());
    b_ = Eigen::MatrixXd(m + 1, n);
    b_.topRows(m) = alpha.transpose();
    b_.bottomRows(1).setOnes();
    c_ = Eigen::VectorXd(m + 1);
    c_.head(m) = q;
    c_(m) = 1.0;
    gram_ = (b_ * b_.transpose()).completeOrthogonalDecomposition();
  }

  Eigen::VectorXd affine(const Eigen::VectorXd& x) const {
    return x - b_.transpose() * gram_.solve(b_ * x - c_);
  }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x, int rounds = 150) const {
    Eigen::VectorXd p = x;
    Eigen::VectorXd inc = Eigen::VectorXd::Zero(x.size());
    for (int it = 0; it < rounds; ++it) {
      const Eigen::VectorXd y = affine(p);
      const Eigen::VectorXd z = (y + inc).cwiseMax(0.0);
      inc = y + inc - z;
      if ((z - p).lpNorm<Eigen::Infinity>() < 1e-15 && it > 2) return z;
      p = z;
    }
    return p;
  }

 private:
  Eigen::MatrixXd b_;
  Eigen::VectorXd c_;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> gram_;
};

// Smooth concave surrogate shared by the power families:
//   sigma(p) = sum_i p_i expm1((s-1) ln p_i) / (1-s)
// which tends to the Shannon value as s -> 1 and is a monotone transform of
// both the Renyi and the Tsallis objective at fixed s.
double surrogate(const Eigen::VectorXd& p, double s) {
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) acc += p(i) * std::expm1((s - 1.0) * std::log(p(i)));
  }
  return acc / (1.0 - s);
}

Eigen::VectorXd surrogate_grad(const Eigen::VectorXd& p, double s) {
  Eigen::VectorXd g(p.size());
  for (int i = 0; i < p.size(); ++i) {
    const double pi = std::max(p(i), 1e-12);
    g(i) = s * std::expm1((s - 1.0) * std::log(pi)) / (1.0 - s);
  }
  return g;
}

}  // namespace

MaxEntSolution solve_maxent_full(const MaxEntProblem& prob, double tol,
                                 int max_iter) {
  const Validated v = validate(prob);

  // Outcomes with zero observed weight force every latent level they overlap
  // with to zero; solve the reduced strictly-positive problem.
  std::vector<int> cols, rows;
  std::vector<bool> forced(v.n, false);
  for (int j = 0; j < v.m; ++j) {
    if (prob.q[j] > 0.0) { cols.push_back(j); continue; }
    for (int i = 0; i < v.n; ++i)
      if (v.alpha(i, j) > 1e-12) forced[i] = true;
  }
  for (int i = 0; i < v.n; ++i)
    if (!forced[i]) rows.push_back(i);
  if (rows.empty()) throw Error(ErrorCode::Infeasible, "every latent level is forced to zero");
  const int nr = static_cast<int>(rows.size());
  const int mr = static_cast<int>(cols.size());
  Eigen::MatrixXd a(nr, mr);
  Eigen::VectorXd qr(mr);
  for (int jj = 0; jj < mr; ++jj) {
    qr(jj) = prob.q[cols[jj]];
    for (int ii = 0; ii < nr; ++ii) a(ii, jj) = v.alpha(rows[ii], cols[jj]);
  }

  double feas_residual = 0.0;
  Eigen::VectorXd start = nearest_feasible(a, qr, 3000, &feas_residual);
  if (feas_residual > 1e-7) {
    std::ostringstream msg;
    msg << "constraints unreachable from the simplex; closest point leaves residual "
        << feas_residual;
    throw Error(ErrorCode::Infeasible, msg.str());
  }

  MaxEntSolution sol;
  sol.dropped_outcomes = v.m - mr;
  sol.multipliers = Eigen::VectorXd::Zero(v.m);
  Eigen::VectorXd pr;

  if (prob.measure.kind() == MeasureKind::VonNeumann) {
    // Dual Newton on g(gamma) = ln sum exp(-(A gamma)_i) + gamma . q (convex).
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(mr);
    auto state = [&](const Eigen::VectorXd& g) {
      Eigen::VectorXd ex = -(a * g);
      const double mx = ex.maxCoeff();
      Eigen::VectorXd w = (ex.array() - mx).exp();
      const double z = w.sum();
      return std::tuple<Eigen::VectorXd, double>(w / z, mx + std::log(z) + g.dot(qr));
    };
    auto [p, gval] = state(gamma);
    int it = 0;
    for (; it < max_iter; ++it) {
      Eigen::VectorXd grad = qr - a.transpose() * p;
      if (grad.lpNorm<Eigen::Infinity>() <= tol) { sol.converged = true; break; }
      Eigen::MatrixXd h = a.transpose() * (p.asDiagonal() * a) -
                          (a.transpose() * p) * (p.transpose() * a);
      h.diagonal().array() += 1e-12 * std::max(1.0, h.trace());
      Eigen::VectorXd dir = h.ldlt().solve(grad);
      double eta = 1.0;
      const double slope = grad.dot(dir);
      for (int bt = 0; bt < 60; ++bt) {
        auto [p_try, g_try] = state(gamma - eta * dir);
        if (g_try <= gval - 1e-4 * eta * slope) {
          gamma -= eta * dir;
          p = p_try;
          gval = g_try;
          break;
        }
        eta *= 0.5;
      }
      if (eta < 1e-17) break;
    }
    sol.iterations = it;
    pr = p;
    for (int jj = 0; jj < mr; ++jj) sol.multipliers(cols[jj]) = gamma(jj);
  } else {
    const double s = prob.measure.param();
    FeasibleProjector project(a, qr);
    Eigen::VectorXd p = project(start);
    double val = surrogate(p, s);
    double eta = 0.1;
    int it = 0;
    for (; it < 4000; ++it) {
      Eigen::VectorXd g = surrogate_grad(p, s);
      Eigen::VectorXd cand;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        cand = project(p + eta * g);
        const double cv = surrogate(cand, s);
        if (cv >= val + 1e-4 * g.dot(cand - p) || cv > val) {
          accepted = true;
          val = cv;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
      const double move = (cand - p).lpNorm<Eigen::Infinity>();
      p = cand;
      eta = std::min(eta * 1.3, 1e6);
      if (move < 1e-13) break;
    }
    sol.iterations = it;
    pr = project(p, 400);
    sol.converged = true;

    // Stationarity multipliers fitted on the support rows.
    std::vector<int> support;
    for (int ii = 0; ii < nr; ++ii)
      if (pr(ii) > 1e-8) support.push_back(ii);
    if (!support.empty()) {
      Eigen::MatrixXd design(support.size(), mr + 1);
      Eigen::VectorXd rhs(support.size());
      Eigen::VectorXd g = surrogate_grad(pr, s);
      for (size_t r = 0; r < support.size(); ++r) {
        design(r, 0) = 1.0;
        design.row(r).tail(mr) = a.row(support[r]);
        rhs(r) = g(support[r]);
      }
      Eigen::VectorXd fit = design.colPivHouseholderQr().solve(rhs);
      for (int jj = 0; jj < mr; ++jj) sol.multipliers(cols[jj]) = fit(jj + 1);
    }
  }

  sol.p = Eigen::VectorXd::Zero(v.n);
  for (int ii = 0; ii < nr; ++ii) sol.p(rows[ii]) = std::max(pr(ii), 0.0);
  sol.residual_constraint = full_residual(sol.p, v.alpha, prob.q);
  sol.residual_norm = std::abs(sol.p.sum() - 1.0);
  if (prob.measure.kind() != MeasureKind::VonNeumann) {
    sol.converged = sol.residual_constraint <= 1e-8;
  }
  sol.objective = classical_entropy(Distribution(sol.p), prob.measure, prob.base);
  return sol;
}

namespace {

double raw_entropy(const double* p, int n, const EntropyMeasure& m, LogBase base) {
  const double logdiv = (base == LogBase::Two) ? M_LN2 : 1.0;
  switch (m.kind()) {
    case MeasureKind::VonNeumann: {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        if (p[i] > 0.0) acc -= p[i] * std::log(p[i]);
      return acc / logdiv;
    }
    case MeasureKind::Renyi: {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        if (p[i] > 0.0) acc += std::pow(p[i], m.param());
      return std::log(acc) / (1.0 - m.param()) / logdiv;
    }
    case MeasureKind::Tsallis: {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        if (p[i] > 0.0) acc += std::pow(p[i], m.param());
      return (acc - 1.0) / (1.0 - m.param());
    }
    default:
      throw Error(ErrorCode::BadInput, "oracle supports vn, renyi and tsallis");
  }
}

}  // namespace

MaxEntSolution brute_force_maxent(const MaxEntProblem& prob, int resolution,
                                  double refine_tol) {
  const Validated v = validate(prob);
  if (v.n > 4) throw Error(ErrorCode::TooLarge, "oracle caps the latent dimension at 4");
  if (resolution < 8) throw Error(ErrorCode::BadInput, "resolution too coarse");
  if (!(refine_tol > 0.0)) throw Error(ErrorCode::BadInput, "refine tolerance must be positive");

  const Eigen::VectorXd qv = prob.q.vec();
  const double step = 1.0 / static_cast<double>(resolution);
  // Any feasible point rounds onto the grid with per-constraint error below
  // n * step, so this slab never discards the rounded optimum.
  const double slab = v.n * step;

  double p[4] = {0, 0, 0, 0};
  std::vector<std::int64_t> k(v.n, 0), best_k;
  double best_val = -std::numeric_limits<double>::infinity();
  std::int64_t scanned = 0;

  std::function<void(int, std::int64_t)> scan = [&](int depth, std::int64_t left) {
    if (depth == v.n - 1) {
      k[depth] = left;
      p[depth] = static_cast<double>(left) * step;
      ++scanned;
      for (int j = 0; j < v.m; ++j) {
        double dot = 0.0;
        for (int i = 0; i < v.n; ++i) dot += p[i] * v.alpha(i, j);
        if (std::abs(dot - qv(j)) > slab) return;
      }
      const double val = raw_entropy(p, v.n, prob.measure, prob.base);
      if (val > best_val) {
        best_val = val;
        best_k = k;
      }
      return;
    }
    for (std::int64_t kv = 0; kv <= left; ++kv) {
      k[depth] = kv;
      p[depth] = static_cast<double>(kv) * step;
      scan(depth + 1, left - kv);
    }
  };
  scan(0, resolution);
  if (best_k.empty()) {
    throw Error(ErrorCode::Infeasible, "no grid point inside the constraint slab");
  }

  // Repair the incumbent onto the exact feasible set: alternate the min-norm
  // correction onto the affine data+normalization set with clamping to the
  // nonnegative orthant.
  Eigen::MatrixXd b(v.m + 1, v.n);
  b.topRows(v.m) = v.alpha.transpose();
  b.bottomRows(1).setOnes();
  Eigen::VectorXd c(v.m + 1);
  c.head(v.m) = qv;
  c(v.m) = 1.0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(b);

  Eigen::VectorXd x(v.n);
  for (int i = 0; i < v.n; ++i) x(i) = static_cast<double>(best_k[i]) * step;
  for (int it = 0; it < 20000; ++it) {
    x += cod.solve((c - b * x).eval());
    x = x.cwiseMax(0.0);
    if ((b * x - c).cwiseAbs().maxCoeff() < 1e-13) break;
  }
  if ((b * x - c).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::Infeasible, "constraints admit no probability vector");
  }

  // Derivative-free polish: pattern search along an orthonormal basis of the
  // constraint nullspace. Concavity (quasiconcavity for Renyi above 1) makes
  // the pattern-search limit the constrained optimum. The nullspace comes from
  // an SVD with a loose relative cutoff: row-stochastic tables make the
  // normalization row a linear combination of the data rows up to rounding,
  // and a machine-precision rank test can miss that dependency, silencing the
  // polish entirely.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > svd.singularValues()(0) * 1e-9) ++rank;
  }
  const int nullity = v.n - rank;
  double fbest = raw_entropy(x.data(), v.n, prob.measure, prob.base);
  std::int64_t evals = 0;
  if (nullity > 0) {
    Eigen::MatrixXd dirs = svd.matrixV().rightCols(nullity);
    double t = step;
    while (t > refine_tol && evals < 500000) {
      bool improved = false;
      for (int d = 0; d < nullity; ++d) {
        for (double sgn : {1.0, -1.0}) {
          Eigen::VectorXd cand = x + (sgn * t) * dirs.col(d);
          if (cand.minCoeff() < 0.0) continue;
          ++evals;
          const double f = raw_entropy(cand.data(), v.n, prob.measure, prob.base);
          if (f > fbest) {
            x = cand;
            fbest = f;
            improved = true;
          }
        }
      }
      if (!improved) t *= 0.5;
    }
  }

  MaxEntSolution sol;
  sol.p = x;
  sol.objective = fbest;
  sol.residual_constraint = full_residual(sol.p, v.alpha, prob.q);
  sol.residual_norm = std::abs(sol.p.sum() - 1.0);
  sol.iterations = static_cast<int>(std::min<std::int64_t>(scanned + evals, INT32_MAX));
  sol.converged = true;
  sol.multipliers = Eigen::VectorXd::Zero(v.m);
  return sol;
}

}  // namespace qent
