#include "models.hpp"

#include <algorithm>
#include <cmath>

#include "channels.hpp"
#include "error.hpp"

namespace qent {

Eigen::VectorXd thermal_weights(double n_bar, int max_n) {
  if (n_bar < 0.0 || !std::isfinite(n_bar)) {
    throw Error(ErrorCode::BadInput, "mean occupation must be nonnegative");
  }
  if (max_n < 0 || max_n + 1 > kMaxDenseDim) {
    throw Error(ErrorCode::BadInput, "bad truncation index");
  }
  Eigen::VectorXd w(max_n + 1);
  const double ratio = n_bar / (n_bar + 1.0);
  double cur = 1.0 / (n_bar + 1.0);
  for (int k = 0; k <= max_n; ++k) {
    w(k) = cur;
    cur *= ratio;
  }
  return w;
}

Distribution thermal_spectrum(double n_bar, int max_n) {
  Eigen::VectorXd w = thermal_weights(n_bar, max_n);
  return Distribution(w / w.sum());
}

DensityMatrix thermal_truncated(double n_bar, int max_n) {
  return DensityMatrix::diagonal(thermal_spectrum(n_bar, max_n));
}

double thermal_entropy_limit(double n_bar) {
  if (n_bar <= 0.0) return 0.0;
  return (n_bar + 1.0) * std::log2(n_bar + 1.0) - n_bar * std::log2(n_bar);
}

std::vector<ThermalRow> thermal_convergence(double n_bar,
                                            const std::vector<int>& cutoffs,
                                            const EntropyMeasure& m,
                                            LogBase base) {
  std::vector<ThermalRow> rows;
  for (int max_n : cutoffs) {
    Eigen::VectorXd w = thermal_weights(n_bar, max_n);
    ThermalRow row;
    row.max_n = max_n;
    row.deficit = std::max(0.0, 1.0 - w.sum());
    row.entropy = classical_entropy(Distribution(w / w.sum()), m, base);
    rows.push_back(row);
  }
  return rows;
}

namespace {

// g((nu-1)/2) with g(x) = (x+1) log2(x+1) - x log2 x
double mode_entropy(double nu) {
  const double x = (nu - 1.0) / 2.0;
  if (x <= 1e-15) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

}  // namespace

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const int dim = static_cast<int>(cov.rows());
  if (dim == 0 || dim % 2 != 0 || cov.cols() != dim) {
    throw Error(ErrorCode::BadInput, "covariance must be square with even dimension");
  }
  if (!cov.allFinite() || (cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::BadInput, "covariance must be symmetric");
  }
  const int modes = dim / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(omega * cov);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::Internal, "eigensolver failed");
  std::vector<double> mods(dim);
  for (int i = 0; i < dim; ++i) mods[i] = std::abs(es.eigenvalues()(i));
  std::sort(mods.begin(), mods.end());
  Eigen::VectorXd nu(modes);
  for (int k = 0; k < modes; ++k) {
    const double a = mods[2 * k], b = mods[2 * k + 1];
    if (std::abs(a - b) > 1e-8 * std::max(1.0, b)) {
      throw Error(ErrorCode::Internal, "symplectic moduli failed to pair");
    }
    nu(modes - 1 - k) = 0.5 * (a + b);  // descending
  }
  if (nu.minCoeff() < 1.0 - 1e-9) {
    throw Error(ErrorCode::Unphysical, "symplectic eigenvalue below the vacuum floor");
  }
  return nu;
}

double gaussian_entropy(const Eigen::MatrixXd& cov) {
  const Eigen::VectorXd nu = symplectic_eigenvalues(cov);
  double s = 0.0;
  for (int k = 0; k < nu.size(); ++k) s += mode_entropy(std::max(nu(k), 1.0));
  return s;
}

Eigen::MatrixXd beamsplitter_covariance(const Eigen::MatrixXd& cov_mode,
                                        double lambda) {
  if (cov_mode.rows() != 2 || cov_mode.cols() != 2) {
    throw Error(ErrorCode::BadInput, "expected a single-mode 2x2 covariance");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::BadInput, "transmissivity must lie in [0,1]");
  }
  symplectic_eigenvalues(cov_mode);  // validates physicality
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd out(4, 4);
  const double cross = std::sqrt(lambda * (1.0 - lambda));
  out.topLeftCorner(2, 2) = lambda * cov_mode + (1.0 - lambda) * id;
  out.bottomRightCorner(2, 2) = (1.0 - lambda) * cov_mode + lambda * id;
  out.topRightCorner(2, 2) = cross * (cov_mode - id);
  out.bottomLeftCorner(2, 2) = cross * (cov_mode - id);
  return out;
}

DensityMatrix spin_cluster_state(const SpinConfig& cfg, double time) {
  const int m = cfg.cluster, n = cfg.outer;
  if (m < 1 || n < 0 || m + n > 12) {
    throw Error(ErrorCode::TooLarge, "cluster scan caps the total spin count at 12");
  }
  if (cfg.couplings.rows() != m || cfg.couplings.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "coupling table must be cluster x outer");
  }
  const int dim = 1 << m;
  // Exact outer trace: every outer spin contributes an independent
  // cos(2 t sum_s omega(s,j) z_s) factor on the (u, ~u-differing) entries;
  // entries where cluster bits agree keep weight 1.
  Matrix rho = Matrix::Zero(dim, dim);
  const double norm = 1.0 / dim;
  for (int u = 0; u < dim; ++u) {
    for (int v = 0; v < dim; ++v) {
      double factor = 1.0;
      for (int j = 0; j < n && factor != 0.0; ++j) {
        double phase = 0.0;
        for (int s = 0; s < m; ++s) {
          const int zu = ((u >> (m - 1 - s)) & 1) ? -1 : 1;
          const int zv = ((v >> (m - 1 - s)) & 1) ? -1 : 1;
          phase += cfg.couplings(s, j) * (zu - zv);
        }
        factor *= std::cos(time * phase);
      }
      rho(u, v) = norm * factor;
    }
  }
  return DensityMatrix(rho);
}

std::vector<SpinRow> spin_cluster_scan(const SpinConfig& cfg, const Basis& j,
                                       const std::vector<double>& times) {
  const int dim = 1 << cfg.cluster;
  if (j.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "pinching basis must act on the cluster");
  }
  const EntropyMeasure vn = EntropyMeasure::von_neumann();
  // X^(x)m witness
  Matrix xm = Matrix::Ones(1, 1);
  const Matrix x2 = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  for (int s = 0; s < cfg.cluster; ++s) xm = kron(xm, x2);

  std::vector<SpinRow> rows;
  for (double t : times) {
    const DensityMatrix rho = spin_cluster_state(cfg, t);
    SpinRow row;
    row.time = t;
    row.entropy = quantum_entropy(rho, vn);
    row.dephased_entropy = quantum_entropy(dephase(rho, j), vn);
    row.coherence = (xm * rho.mat()).trace().real();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qent
